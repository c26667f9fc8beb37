use super::CycNum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolveError {
    /// Row `row` of the reduced system reads `0 = nonzero`.
    Inconsistent { row: usize },
    /// The solution is not unique.
    Underdetermined,
}

/// Solves `a * x = b` exactly by Gaussian elimination over `Q(xi_n)`.
///
/// `a` may have more rows than columns; every row must be satisfied.
pub fn solve_linear(a: &[Vec<CycNum>], b: &[CycNum]) -> Result<Vec<CycNum>, LinearSolveError> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let order = b.first().map(CycNum::order).or_else(|| a.first()?.first().map(CycNum::order));
    let mut m: Vec<Vec<CycNum>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            assert_eq!(r.len(), cols, "ragged matrix");
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();

    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].inverse().expect("nonzero pivot");
        for c in col..=cols {
            m[pivot_row][c] = &m[pivot_row][c] * &inv;
        }
        for r in 0..rows {
            if r == pivot_row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=cols {
                let delta = &factor * &m[pivot_row][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if let Some(row) = (pivot_row..rows).find(|&r| !m[r][cols].is_zero()) {
        return Err(LinearSolveError::Inconsistent { row });
    }
    if pivots.len() < cols {
        return Err(LinearSolveError::Underdetermined);
    }
    let order = order.expect("nonempty system");
    let mut x = vec![CycNum::zero(order); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overdetermined_consistent_system() {
        let n = 5;
        let tau = CycNum::from_ints(n, &[1, 1, 0, 0, 1]);
        let one = CycNum::one(n);
        let zero = CycNum::zero(n);
        // x + tau*y = 1 + tau ; y = 1 ; x = 1
        let a = vec![vec![one.clone(), tau.clone()], vec![zero.clone(), one.clone()], vec![one.clone(), zero]];
        let b = vec![&one + &tau, one.clone(), one.clone()];
        assert_eq!(solve_linear(&a, &b).unwrap(), vec![one.clone(), one]);
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let one = CycNum::one(8);
        let two = CycNum::from_int(8, 2);
        let a = vec![vec![one.clone()], vec![one.clone()]];
        assert!(matches!(solve_linear(&a, &[one.clone(), two]), Err(LinearSolveError::Inconsistent { .. })));
        let a = vec![vec![one.clone(), one.clone()]];
        assert_eq!(solve_linear(&a, &[one]), Err(LinearSolveError::Underdetermined));
    }
}
