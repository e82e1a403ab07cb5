use crate::error::{Error, Result};

/// Dense square real matrix, row-major. Used for antisymmetric matrices of
/// 2-forms; antisymmetry is checked where it matters, not on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SkewMatrix {
    pub fn zeros(n: usize) -> Self {
        SkewMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = SkewMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: row.len() });
            }
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        Ok(m)
    }

    /// Fills `(i, j)` with `f(i, j)` for `i < j` and mirrors with a sign.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SkewMatrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets `(i, j)` to `v` and `(j, i)` to `−v`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = -v;
    }

    /// Principal submatrix on the given index list, in that order.
    pub fn submatrix(&self, idx: &[usize]) -> SkewMatrix {
        let k = idx.len();
        let mut m = SkewMatrix::zeros(k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.data[a * k + b] = self.get(i, j);
            }
        }
        m
    }

    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self.get(i, j) + self.get(j, i)).abs());
            }
        }
        worst
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.n, self.n, &self.data)
    }
}

/// Pfaffian by congruence elimination with partial pivoting.
///
/// At step `k` the largest entry of row `k` is moved to column `k+1`, then
/// the remaining entries of row `k` are cleared with unit-triangular
/// congruences, which leave the Pfaffian unchanged. What is left factors as
/// `a_{k,k+1}·Pf(trailing block)`.
pub fn pfaffian(a: &SkewMatrix) -> Result<f64> {
    let n = a.dim();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let asym = a.asymmetry();
    if asym > 1e-12 * a.max_abs().max(1.0) {
        return Err(Error::NotAntisymmetric(asym));
    }
    let mut m = a.data.clone();
    let at = |m: &Vec<f64>, i: usize, j: usize| m[i * n + j];
    let mut pf = 1.0;
    let mut k = 0;
    while k < n {
        let (mut piv, mut best) = (k + 1, at(&m, k, k + 1).abs());
        for j in k + 2..n {
            let v = at(&m, k, j).abs();
            if v > best {
                piv = j;
                best = v;
            }
        }
        if best == 0.0 {
            return Ok(0.0);
        }
        if piv != k + 1 {
            // swap rows and columns piv <-> k+1
            for c in 0..n {
                m.swap((k + 1) * n + c, piv * n + c);
            }
            for r in 0..n {
                m.swap(r * n + k + 1, r * n + piv);
            }
            pf = -pf;
        }
        let pivot = at(&m, k, k + 1);
        pf *= pivot;
        let tau: Vec<f64> = (k + 2..n).map(|i| at(&m, k, i) / pivot).collect();
        for (ii, i) in (k + 2..n).enumerate() {
            for (jj, j) in (k + 2..n).enumerate() {
                let upd = m[i * n + j] - tau[ii] * m[(k + 1) * n + j] - tau[jj] * m[i * n + k + 1];
                m[i * n + j] = upd;
            }
        }
        k += 2;
    }
    Ok(pf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_skew(n: usize, rng: &mut ChaCha8Rng) -> SkewMatrix {
        SkewMatrix::from_upper(n, |_, _| rng.random_range(-2.0..2.0))
    }

    #[test]
    fn small_examples() {
        let a = SkewMatrix::from_rows(&[vec![0.0, 3.0], vec![-3.0, 0.0]]).unwrap();
        assert_eq!(pfaffian(&a).unwrap(), 3.0);

        let mut b = SkewMatrix::zeros(4);
        b.set(0, 1, 2.5);
        b.set(2, 3, -4.0);
        assert_eq!(pfaffian(&b).unwrap(), -10.0);

        // Pf of the 4x4 general matrix is a01 a23 − a02 a13 + a03 a12.
        let c = SkewMatrix::from_upper(4, |i, j| (1 + i + 3 * j) as f64);
        let g = |i, j| c.get(i, j);
        let expected = g(0, 1) * g(2, 3) - g(0, 2) * g(1, 3) + g(0, 3) * g(1, 2);
        assert!((pfaffian(&c).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn rejects_odd_and_asymmetric() {
        assert!(matches!(pfaffian(&SkewMatrix::zeros(3)), Err(Error::OddDimension(3))));
        let a = SkewMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(pfaffian(&a), Err(Error::NotAntisymmetric(_))));
    }

    #[test]
    fn random_six_by_six_against_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let a = random_skew(6, &mut rng);
            let pf = pfaffian(&a).unwrap();
            let det = a.to_nalgebra().determinant();
            assert!((pf * pf - det).abs() <= 1e-9 * det.abs().max(1e-300));
        }
    }

    proptest! {
        #[test]
        fn squared_pfaffian_is_determinant(seed in any::<u64>(), half in 1usize..=5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_skew(2 * half, &mut rng);
            let pf = pfaffian(&a).unwrap();
            let det = a.to_nalgebra().determinant();
            prop_assert!((pf * pf - det).abs() <= 1e-9 * det.abs().max(1e-12));
        }
    }
}
