use crate::problem::{ConstraintRow, Problem};

/// Hildreth's method on the materialized constraint matrix with a dense dual
/// vector: `theta = (a'x - b) / (a'W_g^-1 a)`, `delta = min(-theta, y)`,
/// `x += delta W_g^-1 a`, `y -= delta`. Equalities use `delta = -theta`.
///
/// Shares nothing with the sparse solver except the problem definition.
#[derive(Debug, Clone)]
pub struct DenseHildreth {
    rows: Vec<ConstraintRow>,
    scale: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl DenseHildreth {
    pub fn new(p: &Problem) -> Self {
        let rows: Vec<ConstraintRow> = p.constraints().map(|(_, r)| r).collect();
        let scale: Vec<f64> = p.weight().iter().map(|w| p.gamma() / w).collect();
        let x = p.cost().iter().zip(&scale).map(|(c, s)| -c * s).collect();
        let y = vec![0.0; rows.len()];
        DenseHildreth { rows, scale, x, y }
    }

    pub fn pass(&mut self) {
        for i in 0..self.rows.len() {
            let r = &self.rows[i];
            let ax: f64 = r.entries.iter().map(|&(v, a)| a * self.x[v]).sum();
            let denom: f64 = r.entries.iter().map(|&(v, a)| a * a * self.scale[v]).sum();
            let theta = (ax - r.rhs) / denom;
            let delta = if r.equality { -theta } else { (-theta).min(self.y[i]) };
            for &(v, a) in &r.entries {
                self.x[v] += delta * a * self.scale[v];
            }
            self.y[i] -= delta;
        }
    }

    pub fn rows(&self) -> &[ConstraintRow] {
        &self.rows
    }
}

/// `||W_g x + A'y + c||_inf` for a dense dual vector.
pub fn kkt_residual(p: &Problem, x: &[f64], y: &[f64]) -> f64 {
    let mut g: Vec<f64> = x
        .iter()
        .zip(p.weight())
        .zip(p.cost())
        .map(|((x, w), c)| w / p.gamma() * x + c)
        .collect();
    for (t, row) in p.constraints() {
        if y[t] != 0.0 {
            for (v, a) in row.entries {
                g[v] += a * y[t];
            }
        }
    }
    g.iter().fold(0.0, |m, v| m.max(v.abs()))
}
