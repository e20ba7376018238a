/// One stored multiplier: constraint id and its value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualEntry {
    pub t: u64,
    pub y: f64,
}

/// Sparse multipliers for a cyclic sweep.
///
/// Constraints are visited in increasing id order, so the nonzero duals of the
/// previous pass can be read back with a forward-only cursor while this pass's
/// values are appended to a second array. The arrays swap when the pass ends.
#[derive(Debug, Clone, Default)]
pub struct DualStore {
    prev: Vec<DualEntry>,
    cursor: usize,
    curr: Vec<DualEntry>,
}

impl DualStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Dual of constraint `t` from the previous pass (zero if none stored).
    ///
    /// Ids must be requested in increasing order within a pass.
    #[inline(always)]
    pub fn take(&mut self, t: u64) -> f64 {
        match self.prev.get(self.cursor) {
            Some(e) if e.t == t => {
                self.cursor += 1;
                e.y
            }
            _ => {
                debug_assert!(self.prev.get(self.cursor).map_or(true, |e| e.t > t));
                0.0
            }
        }
    }

    #[inline(always)]
    pub fn push(&mut self, t: u64, y: f64) {
        debug_assert!(self.curr.last().map_or(true, |e| e.t < t));
        self.curr.push(DualEntry { t, y });
    }

    /// Ends a pass: this pass's duals become the ones read by the next.
    pub fn swap(&mut self) {
        debug_assert_eq!(self.cursor, self.prev.len(), "pass ended before all stored duals were read");
        std::mem::swap(&mut self.prev, &mut self.curr);
        self.curr.clear();
        self.cursor = 0;
    }

    /// Nonzero duals as of the end of the last completed pass.
    pub fn entries(&self) -> &[DualEntry] {
        &self.prev
    }

    /// Number of nonzero duals stored after the last completed pass.
    pub fn len(&self) -> usize {
        self.prev.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prev.is_empty()
    }

    /// Dense copy of the duals over `m` constraints.
    pub fn to_dense(&self, m: usize) -> Vec<f64> {
        let mut y = vec![0.0; m];
        for e in &self.prev {
            y[e.t as usize] = e.y;
        }
        y
    }

    /// Full dual vector in the middle of a pass: entries already revisited
    /// this pass plus the not-yet-visited tail of the previous pass.
    pub fn to_dense_mid_pass(&self, m: usize) -> Vec<f64> {
        let mut y = vec![0.0; m];
        for e in self.curr.iter().chain(&self.prev[self.cursor..]) {
            y[e.t as usize] = e.y;
        }
        y
    }
}
