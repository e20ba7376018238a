/// Solves `M z = rhs` for square `M` (row-major, `k x k`) by Gaussian
/// elimination with partial pivoting. Returns `None` if `M` is numerically singular.
pub fn solve_dense(mut m: Vec<f64>, mut rhs: Vec<f64>, k: usize) -> Option<Vec<f64>> {
    assert_eq!(m.len(), k * k);
    assert_eq!(rhs.len(), k);
    let scale = m.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
    for col in 0..k {
        let piv = (col..k).max_by(|&a, &b| m[a * k + col].abs().total_cmp(&m[b * k + col].abs()))?;
        if m[piv * k + col].abs() <= 1e-13 * scale {
            return None;
        }
        if piv != col {
            for c in 0..k {
                m.swap(piv * k + c, col * k + c);
            }
            rhs.swap(piv, col);
        }
        let d = m[col * k + col];
        for r in (col + 1)..k {
            let f = m[r * k + col] / d;
            if f == 0.0 {
                continue;
            }
            for c in col..k {
                m[r * k + c] -= f * m[col * k + c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut z = vec![0.0; k];
    for r in (0..k).rev() {
        let s: f64 = ((r + 1)..k).map(|c| m[r * k + c] * z[c]).sum();
        z[r] = (rhs[r] - s) / m[r * k + r];
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_system() {
        // 2x + y = 3, x + 3y = 5
        let z = solve_dense(vec![2.0, 1.0, 1.0, 3.0], vec![3.0, 5.0], 2).unwrap();
        assert!((z[0] - 0.8).abs() < 1e-14 && (z[1] - 1.4).abs() < 1e-14);
    }

    #[test]
    fn needs_pivoting() {
        let z = solve_dense(vec![0.0, 1.0, 1.0, 0.0], vec![2.0, 3.0], 2).unwrap();
        assert_eq!(z, vec![3.0, 2.0]);
    }

    #[test]
    fn singular() {
        assert!(solve_dense(vec![1.0, 2.0, 2.0, 4.0], vec![1.0, 2.0], 2).is_none());
    }
}
