//! Exact inertia of symmetric rational matrices.
//!
//! The number of positive eigenvalues (with multiplicity) is read off the
//! characteristic polynomial: zero roots are stripped, Yun's square-free
//! decomposition splits the rest into `q_1 q_2^2 q_3^3 ...`, and a Sturm
//! sequence counts the distinct positive roots of each `q_i`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{common_denominator, Rational};

/// Dense univariate polynomial over the rationals, coefficients in
/// ascending order of degree. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => Self::new(self.coeffs.iter().map(|c| c / lc).collect()),
        }
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Euclidean division: `self = q * divisor + r`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (dd..=nd).rev() {
            let c = &rem[k] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[k - dd + j] -= t;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn sign_at_zero(&self) -> i32 {
        self.coeffs.first().map_or(0, signum)
    }

    pub fn sign_at_infinity(&self) -> i32 {
        self.leading().map_or(0, signum)
    }

    /// Number of times `x` divides the polynomial.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs[k..].to_vec())
    }
}

fn signum(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Yun's algorithm. Returns `(i, q_i)` for each non-constant factor of
/// multiplicity `i`, up to a constant factor.
pub fn square_free_decomposition(p: &UniPoly) -> Vec<(usize, UniPoly)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = sub(&c, &b.derivative());
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((i, a.clone()));
        }
        b = b.div_rem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.div_rem(&a).0;
        d = sub(&c, &b.derivative());
        i += 1;
    }
    out
}

fn sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    UniPoly::new(
        (0..n)
            .map(|k| {
                let x = a.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                let y = b.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                x - y
            })
            .collect(),
    )
}

/// Canonical Sturm chain `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        seq.push(r);
    }
    seq.pop();
    seq
}

fn sign_changes(signs: impl IntoIterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for s in signs.into_iter().filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Distinct roots in `(0, +inf)` of a polynomial with `p(0) != 0`.
pub fn distinct_positive_roots(p: &UniPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    debug_assert!(p.sign_at_zero() != 0);
    let seq = sturm_sequence(p);
    let at_zero = sign_changes(seq.iter().map(UniPoly::sign_at_zero));
    let at_inf = sign_changes(seq.iter().map(UniPoly::sign_at_infinity));
    at_zero - at_inf
}

/// Positive roots counted with multiplicity.
pub fn positive_roots_with_multiplicity(p: &UniPoly) -> usize {
    if p.is_zero() {
        return 0;
    }
    let stripped = p.shift_down(p.zero_root_multiplicity());
    square_free_decomposition(&stripped)
        .iter()
        .map(|(mult, q)| mult * distinct_positive_roots(q))
        .sum()
}

/// Square rational matrix stored row-major.
pub type Matrix = Vec<Vec<Rational>>;

/// Characteristic polynomial `det(xI - A)` of an integer matrix via
/// Faddeev–LeVerrier. All divisions are exact over the integers.
pub fn characteristic_polynomial_int(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // m holds M_k; M_0 = 0.
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        let c = -(trace / BigInt::from(k));
        coeffs[n - k] = c;
    }
    coeffs
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Characteristic polynomial of a rational matrix scaled by the common
/// denominator `D` of its entries (eigenvalues scale by `D > 0`, so signs
/// and multiplicities are unchanged).
pub fn scaled_characteristic_polynomial(a: &[Vec<Rational>]) -> UniPoly {
    let denom = common_denominator(a.iter().flatten());
    let d = Rational::from_integer(denom);
    let int: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| row.iter().map(|x| (x * &d).to_integer()).collect())
        .collect();
    UniPoly::from_integers(&characteristic_polynomial_int(&int))
}

/// Number of positive eigenvalues, with multiplicity, of a symmetric
/// rational matrix. Exact.
pub fn positive_eigenvalue_count(a: &[Vec<Rational>]) -> usize {
    if a.is_empty() {
        return 0;
    }
    positive_roots_with_multiplicity(&scaled_characteristic_polynomial(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn ints(v: &[i64]) -> UniPoly {
        UniPoly::new(v.iter().map(|&c| rat(c)).collect())
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    /// Descartes' rule of signs is exact for real-rooted polynomials, which
    /// characteristic polynomials of symmetric matrices are.
    fn descartes_positive(p: &UniPoly) -> usize {
        sign_changes(p.coeffs().iter().map(signum))
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let p = ints(&[6, -7, 0, 1]);
        let (q, r) = p.div_rem(&ints(&[-1, 1]));
        assert_eq!(q, ints(&[-6, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(p.gcd(&ints(&[2, -3, 1])), ints(&[2, -3, 1]));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (x-1)^3 (x+2)^2 (x-5)
        let p = {
            let mut acc = ints(&[1]);
            for f in [[-1, 1], [-1, 1], [-1, 1], [2, 1], [2, 1], [-5, 1]] {
                acc = mul(&acc, &ints(&f));
            }
            acc
        };
        let dec = square_free_decomposition(&p);
        let shape: Vec<(usize, Option<usize>)> =
            dec.iter().map(|(m, q)| (*m, q.degree())).collect();
        assert_eq!(shape, vec![(1, Some(1)), (2, Some(1)), (3, Some(1))]);
        assert_eq!(positive_roots_with_multiplicity(&p), 4);
        assert_eq!(descartes_positive(&p), 4);
    }

    fn mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut out = vec![Rational::zero(); a.coeffs().len() + b.coeffs().len() - 1];
        for (i, x) in a.coeffs().iter().enumerate() {
            for (j, y) in b.coeffs().iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        UniPoly::new(out)
    }

    #[test]
    fn complete_graph_spectrum() {
        // K3: {2, -1, -1}
        let k3 = mat(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        let cp = scaled_characteristic_polynomial(&k3);
        assert_eq!(cp, ints(&[-2, -3, 0, 1]));
        assert_eq!(positive_eigenvalue_count(&k3), 1);
    }

    #[test]
    fn two_disjoint_edges_have_two_positive_eigenvalues() {
        let g = mat(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        assert_eq!(positive_eigenvalue_count(&g), 2);
    }

    #[test]
    fn repeated_positive_eigenvalue_counts_with_multiplicity() {
        let id = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(positive_eigenvalue_count(&id), 3);
        let zero = mat(&[&[0, 0], &[0, 0]]);
        assert_eq!(positive_eigenvalue_count(&zero), 0);
    }

    #[test]
    fn rational_entries() {
        // [[1/2, 1/3], [1/3, 0]] has one positive and one negative eigenvalue.
        let a = vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(1, 3), rat(0)]];
        assert_eq!(positive_eigenvalue_count(&a), 1);
    }

    #[test]
    fn sturm_agrees_with_descartes_on_symmetric_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let mut a = vec![vec![rat(0); n]; n];
            for i in 0..n {
                for j in i..n {
                    let x = rat(rng.gen_range(-3..=3));
                    a[i][j] = x.clone();
                    a[j][i] = x;
                }
            }
            let cp = scaled_characteristic_polynomial(&a);
            let stripped = cp.shift_down(cp.zero_root_multiplicity());
            assert_eq!(positive_eigenvalue_count(&a), descartes_positive(&stripped));
        }
    }
}
