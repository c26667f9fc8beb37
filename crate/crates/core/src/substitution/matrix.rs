use super::{SubstitutionSystem, WordSubstitution};
use crate::error::{Error, Result};

/// Square nonnegative integer matrix, row-major.
pub type IntMatrix = Vec<Vec<u64>>;

/// Anything with a substitution (incidence) matrix `M_ij = |D_ij|`: the
/// number of children of type `i` inside a parent of type `j`.
pub trait Incidence {
    fn substitution_matrix(&self) -> IntMatrix;
}

impl Incidence for SubstitutionSystem {
    fn substitution_matrix(&self) -> IntMatrix {
        self.entries().iter().map(|row| row.iter().map(|set| set.len() as u64).collect()).collect()
    }
}

impl Incidence for WordSubstitution {
    fn substitution_matrix(&self) -> IntMatrix {
        let m = self.alphabet().len();
        let mut out = vec![vec![0u64; m]; m];
        for (j, img) in self.images().iter().enumerate() {
            for &i in img {
                out[i][j] += 1;
            }
        }
        out
    }
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

pub(crate) fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// True iff some power `M^k` with `k <= m^2 - 2m + 2` is entrywise positive.
pub fn is_primitive(m: &IntMatrix) -> bool {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return false;
    }
    // Wielandt's bound; only the zero pattern matters.
    let bound = n * n + 2 - 2 * n;
    let pattern: IntMatrix = m.iter().map(|r| r.iter().map(|&v| u64::from(v > 0)).collect()).collect();
    let mut power = pattern.clone();
    for _ in 0..bound {
        if power.iter().all(|r| r.iter().all(|&v| v > 0)) {
            return true;
        }
        power = mat_mul(&power, &pattern);
        for r in power.iter_mut() {
            for v in r.iter_mut() {
                *v = u64::from(*v > 0);
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq)]
pub struct PfData {
    pub eigenvalue: f64,
    /// Left eigenvector, first entry 1.
    pub left: Vec<f64>,
    /// Right eigenvector, first entry 1.
    pub right: Vec<f64>,
}

fn power_iteration(m: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let n = m.len();
    let mut v = vec![1.0; n];
    let mut lambda = 0.0;
    for _ in 0..100_000 {
        let w: Vec<f64> = (0..n).map(|i| (0..n).map(|j| m[i][j] * v[j]).sum()).collect();
        let norm: f64 = w.iter().sum();
        let next: Vec<f64> = w.iter().map(|x| x / norm).collect();
        lambda = norm / v.iter().sum::<f64>();
        // relative residual |M v - lambda v| / |lambda v|
        let mv: Vec<f64> = (0..n).map(|i| (0..n).map(|j| m[i][j] * next[j]).sum()).collect();
        let lam_next = mv.iter().sum::<f64>();
        let resid = mv.iter().zip(&next).map(|(a, b)| (a - lam_next * b).abs()).fold(0.0, f64::max);
        v = next;
        if resid <= 1e-13 * lam_next {
            lambda = lam_next;
            break;
        }
    }
    (lambda, v)
}

/// Perron-Frobenius eigenvalue with positive left and right eigenvectors.
pub fn pf_data(m: &IntMatrix) -> Result<PfData> {
    if !is_primitive(m) {
        return Err(Error::NotPrimitive);
    }
    let n = m.len();
    let f: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
    let ft: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f[j][i]).collect()).collect();
    let (eigenvalue, right) = power_iteration(&f);
    let (_, left) = power_iteration(&ft);
    let normalize = |v: Vec<f64>| {
        let head = v[0];
        v.into_iter().map(|x| x / head).collect()
    };
    Ok(PfData { eigenvalue, left: normalize(left), right: normalize(right) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::parse_word_substitution;

    #[test]
    fn word_matrix_convention() {
        let fib2 = parse_word_substitution("a -> aab\nb -> ab").unwrap();
        assert_eq!(fib2.substitution_matrix(), vec![vec![2, 1], vec![1, 1]]);
        let s = parse_word_substitution("a -> ab\nb -> aab").unwrap();
        let m = s.substitution_matrix();
        // column b counts the letters of sigma(b) = aab
        assert_eq!(m[0][1], 2);
        assert_eq!(m, vec![vec![1, 2], vec![1, 1]]);
        assert_eq!(transpose(&m), vec![vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&vec![vec![2, 1], vec![1, 1]]));
        assert!(is_primitive(&vec![vec![1, 1], vec![1, 0]]));
        assert!(!is_primitive(&vec![vec![1, 0], vec![0, 1]]));
        assert!(!is_primitive(&vec![vec![0, 1], vec![1, 0]]));
        assert!(is_primitive(&vec![vec![3]]));
        assert!(!is_primitive(&vec![vec![0]]));
        // Wielandt matrix needs the full bound (m^2 - 2m + 2 = 10 for m = 4)
        let w = vec![vec![0, 0, 0, 1], vec![1, 0, 0, 1], vec![0, 1, 0, 0], vec![0, 0, 1, 0]];
        assert!(is_primitive(&w));
    }

    #[test]
    fn pf_values() {
        let d = pf_data(&vec![vec![2, 1], vec![1, 1]]).unwrap();
        assert!((d.eigenvalue - 2.618_033_988_7).abs() < 1e-9);
        let d = pf_data(&vec![vec![1, 2], vec![1, 1]]).unwrap();
        assert!((d.eigenvalue - 2.414_213_562_4).abs() < 1e-9);
        // left eigenvector holds relative lengths (1, sqrt 2)
        assert!((d.left[1] - 2f64.sqrt()).abs() < 1e-9);
        assert!((d.right[1] - 1.0 / 2f64.sqrt()).abs() < 1e-9);
        let d = pf_data(&vec![vec![3]]).unwrap();
        assert_eq!((d.eigenvalue, d.left.clone(), d.right.clone()), (3.0, vec![1.0], vec![1.0]));
        assert_eq!(pf_data(&vec![vec![1, 0], vec![0, 1]]), Err(Error::NotPrimitive));
    }
}
