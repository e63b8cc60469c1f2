//! Birkhoff–Grothendieck factorization: `W·T·U = diag(z^-d_1, ..., z^-d_k)`
//! with `W` unimodular over `C[w]`, `U` unimodular over `C[z]` and
//! `d_1 >= ... >= d_k`.
//!
//! The recursion twists `E` until it just acquires a section, uses that
//! (necessarily nowhere vanishing) section to split off a trivial line
//! subbundle, factors the quotient, and finally clears the coupling row
//! between the two with one shear on each chart.

use std::fmt;

use num_traits::Zero;

use crate::bundle::VectorBundle;
use crate::cech::{h0_basis, h0_dim, Section};
use crate::error::{Error, Result};
use crate::laurent::{poly_gcd_bezout, ChartRing, LaurentPoly};
use crate::lmatrix::{is_unimodular, unimodular_completion, LaurentMatrix};

/// Splitting degrees, sorted nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType(Vec<i64>);

impl SplittingType {
    pub fn new(mut degrees: Vec<i64>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplittingType(degrees)
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn dual(&self) -> SplittingType {
        SplittingType::new(self.0.iter().map(|d| -d).collect())
    }

    pub fn is_self_dual(&self) -> bool {
        *self == self.dual()
    }

    pub fn twist(&self, m: i64) -> SplittingType {
        SplittingType(self.0.iter().map(|d| d + m).collect())
    }

    pub fn direct_sum(&self, other: &SplittingType) -> SplittingType {
        SplittingType::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn tensor(&self, other: &SplittingType) -> SplittingType {
        SplittingType::new(
            self.0
                .iter()
                .flat_map(|a| other.0.iter().map(move |b| a + b))
                .collect(),
        )
    }

    /// `h0 = Σ max(0, d_i + 1)`.
    pub fn h0(&self) -> usize {
        self.0.iter().map(|&d| (d + 1).max(0) as usize).sum()
    }

    /// `h1 = Σ max(0, -d_i - 1)`.
    pub fn h1(&self) -> usize {
        self.0.iter().map(|&d| (-d - 1).max(0) as usize).sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Certificate `W·T·U = D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub w: LaurentMatrix,
    pub u: LaurentMatrix,
    pub d: LaurentMatrix,
}

impl Factorization {
    /// Reads `d_i` off the diagonal `z^-d_i`; `None` unless `D` is diagonal
    /// with monic monomial entries.
    pub fn degrees(&self) -> Option<Vec<i64>> {
        if !self.d.is_square() || !self.d.is_diagonal() {
            return None;
        }
        (0..self.d.rows())
            .map(|i| match self.d[(i, i)].as_unit() {
                Some((c, e)) if num_traits::One::is_one(&c) => Some(-e),
                _ => None,
            })
            .collect()
    }
}

/// Cap used by the twist search: `k·(N+1)` for the largest absolute
/// exponent `N` of the transition.
fn search_cap(e: &VectorBundle) -> i64 {
    e.rank() as i64 * (e.transition().max_abs_exponent() + 1)
}

/// The least `m` with `h0(E(m)) > 0`; equals `-d_1`.
pub fn minimal_twist(e: &VectorBundle) -> Result<i64> {
    let cap = search_cap(e);
    // Below -max exponent of T^-1 the section window is empty, so h0 = 0.
    let floor = -e.inverse_transition().max_exponent().unwrap_or(0);
    let h0_at = |m: i64| h0_dim(&e.twist(m));

    let start = floor.max(-cap);
    if start > cap {
        return Err(Error::SearchExhausted { lo: -cap, hi: cap });
    }
    if start == -cap && h0_at(start)? > 0 {
        // The minimum lies below the search range.
        return Err(Error::SearchExhausted { lo: -cap, hi: cap });
    }
    // Gallop up from a known zero, then bisect.
    let mut zero = start - 1;
    let mut step = 1;
    let positive = loop {
        let m = (zero + step).min(cap);
        if h0_at(m)? > 0 {
            break m;
        }
        if m == cap {
            return Err(Error::SearchExhausted { lo: -cap, hi: cap });
        }
        zero = m;
        step *= 2;
    };
    let mut hi = positive;
    while hi - zero > 1 {
        let mid = zero + (hi - zero) / 2;
        if h0_at(mid)? > 0 {
            hi = mid;
        } else {
            zero = mid;
        }
    }
    Ok(hi)
}

/// First basis section of a bundle twisted to its minimal twist, checked
/// to vanish nowhere: its components have constant gcd (no zero on the
/// z-chart) and its value at `w = 0` is nonzero.
pub fn extract_section(e: &VectorBundle) -> Result<Section> {
    let s = h0_basis(e)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::SectionVanishes("bundle has no nonzero section".into()))?;
    let mut g = LaurentPoly::zero();
    for c in &s.components {
        if !c.is_zero() {
            g = if g.is_zero() {
                c.clone()
            } else {
                poly_gcd_bezout(&g, c, ChartRing::ZChart)?.0
            };
        }
    }
    if g.as_constant().is_none() {
        return Err(Error::SectionVanishes(format!(
            "section components share the factor {g}"
        )));
    }
    if s.at_infinity(e).iter().all(|p| p.coeff(0).is_zero()) {
        return Err(Error::SectionVanishes(
            "section vanishes at infinity".into(),
        ));
    }
    Ok(s)
}

/// Degrees (sorted nonincreasing) and gauges with `W·T·U = diag(z^-d)`.
struct Split {
    degrees: Vec<i64>,
    w: LaurentMatrix,
    u: LaurentMatrix,
}

fn split_rec(e: &VectorBundle) -> Result<Split> {
    let k = e.rank();
    if k == 1 {
        let (c, exp) = e.det_unit();
        return Ok(Split {
            degrees: vec![-exp],
            w: LaurentMatrix::diagonal(vec![LaurentPoly::constant(c.inverse()?)]),
            u: LaurentMatrix::identity(1),
        });
    }

    let m = minimal_twist(e)?;
    let twisted = e.twist(m);
    let section = extract_section(&twisted)?;

    // Trivial subbundle: s becomes the first frame vector on both charts.
    let origin = unimodular_completion(&section.components, ChartRing::ZChart)?;
    let at_infinity = section.at_infinity(&twisted);
    let infinity = unimodular_completion(&at_infinity, ChartRing::WChart)?;
    let w1 = infinity.inverse;
    let u1 = origin.matrix;
    let block = LaurentMatrix::product([&w1, twisted.transition(), &u1])?;
    debug_assert!((0..k).all(|i| if i == 0 {
        block[(i, 0)].is_one()
    } else {
        block[(i, 0)].is_zero()
    }));

    let quotient = VectorBundle::new(block.trailing_block(1))?;
    let inner = split_rec(&quotient)?;
    if let Some(&b) = inner.degrees.iter().find(|&&b| b > 0) {
        return Err(Error::QuotientDegreePositive(b));
    }

    let w2 = LaurentMatrix::identity(1).direct_sum(&inner.w);
    let u2 = LaurentMatrix::identity(1).direct_sum(&inner.u);

    // Coupling row after the inner gauge: c·U_Q.
    let mut w3 = LaurentMatrix::identity(k);
    let mut u3 = LaurentMatrix::identity(k);
    for j in 0..k - 1 {
        let mut c = LaurentPoly::zero();
        for l in 0..k - 1 {
            c = &c + &(&block[(0, l + 1)] * &inner.u[(l, j)]);
        }
        // Exponents <= 0 are absorbed through the diagonal entry z^-b_j by a
        // w-shear (b_j <= 0 keeps it in C[w]); exponents >= 1 by a z-shear.
        let (low, high) = c.split_at(0);
        w3[(0, j + 1)] = -low.shift(inner.degrees[j]);
        u3[(0, j + 1)] = -high;
    }

    let w = LaurentMatrix::product([&w3, &w2, &w1])?;
    let u = LaurentMatrix::product([&u1, &u2, &u3])?;
    let degrees: Vec<i64> = std::iter::once(-m)
        .chain(inner.degrees.iter().map(|b| b - m))
        .collect();
    Ok(sorted(Split { degrees, w, u }))
}

/// Applies the permutation gauge that sorts the degrees nonincreasingly.
fn sorted(split: Split) -> Split {
    let k = split.degrees.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| split.degrees[b].cmp(&split.degrees[a]));
    if order.iter().enumerate().all(|(i, &o)| i == o) {
        return split;
    }
    let mut p = LaurentMatrix::zeros(k, k);
    for (i, &o) in order.iter().enumerate() {
        p[(o, i)] = LaurentPoly::one();
    }
    Split {
        degrees: order.iter().map(|&o| split.degrees[o]).collect(),
        w: p.transpose().mul(&split.w).expect("square"),
        u: split.u.mul(&p).expect("square"),
    }
}

/// Splitting type together with a certificate.
pub fn grothendieck_split(e: &VectorBundle) -> Result<(SplittingType, Factorization)> {
    let split = split_rec(e)?;
    let exps: Vec<i64> = split.degrees.iter().map(|d| -d).collect();
    let fact = Factorization {
        w: split.w,
        u: split.u,
        d: LaurentMatrix::monomial_diagonal(&exps),
    };
    debug_assert!(verify_factorization(e, &fact));
    Ok((SplittingType(split.degrees), fact))
}

pub fn splitting_type(e: &VectorBundle) -> Result<SplittingType> {
    grothendieck_split(e).map(|(t, _)| t)
}

/// Checks `W·T·U = D` exactly, the unimodularity of both gauges, and that
/// `D = diag(z^-d_i)` with `d` nonincreasing.
pub fn verify_factorization(e: &VectorBundle, f: &Factorization) -> bool {
    let k = e.rank();
    let shapes_ok = [&f.w, &f.u, &f.d]
        .iter()
        .all(|m| m.rows() == k && m.cols() == k);
    if !shapes_ok {
        return false;
    }
    let Some(degrees) = f.degrees() else {
        return false;
    };
    if degrees.windows(2).any(|w| w[0] < w[1]) {
        return false;
    }
    if !is_unimodular(&f.w, ChartRing::WChart) || !is_unimodular(&f.u, ChartRing::ZChart) {
        return false;
    }
    LaurentMatrix::product([&f.w, e.transition(), &f.u]).is_ok_and(|p| p == f.d)
}

/// Isomorphic iff the splitting types agree.
pub fn iso(a: &VectorBundle, b: &VectorBundle) -> Result<bool> {
    if a.rank() != b.rank() || a.degree() != b.degree() {
        return Ok(false);
    }
    Ok(splitting_type(a)? == splitting_type(b)?)
}

pub fn is_self_dual(e: &VectorBundle) -> Result<bool> {
    Ok(splitting_type(e)?.is_self_dual())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{random_bundle, GaugeMove, GaugeSide};

    fn bundle(rows: &[&[&[(i64, i64)]]]) -> VectorBundle {
        VectorBundle::new(LaurentMatrix::from_int_terms(rows)).unwrap()
    }

    #[test]
    fn minimal_twists() {
        assert_eq!(minimal_twist(&VectorBundle::line(3)).unwrap(), -3);
        assert_eq!(minimal_twist(&VectorBundle::split(&[2, -1])).unwrap(), -2);
        for seed in 0..5 {
            assert_eq!(
                minimal_twist(&random_bundle(&[2, -1], 2, seed)).unwrap(),
                -2
            );
        }
    }

    #[test]
    fn sections_at_minimal_twist_vanish_nowhere() {
        let s = extract_section(&VectorBundle::trivial(1)).unwrap();
        assert!(s.components[0].is_one());
        let e = bundle(&[&[&[(-2, 1)], &[(0, 1)]], &[&[], &[(1, 1)]]]).twist(-2);
        let s = extract_section(&e).unwrap();
        assert!(s.is_section_of(&e));
        assert!(extract_section(&VectorBundle::line(-1)).is_err());
    }

    #[test]
    fn diagonal_inputs() {
        let (t, f) = grothendieck_split(&VectorBundle::split(&[-1, 3, 0])).unwrap();
        assert_eq!(t.degrees(), &[3, 0, -1]);
        assert!(verify_factorization(&VectorBundle::split(&[-1, 3, 0]), &f));
        assert_eq!(
            splitting_type(&VectorBundle::line(5)).unwrap().degrees(),
            &[5]
        );
    }

    #[test]
    fn extensions_split_holomorphically() {
        let euler = bundle(&[&[&[(1, 1)], &[(0, 1)]], &[&[], &[(-1, 1)]]]);
        assert_eq!(splitting_type(&euler).unwrap().degrees(), &[0, 0]);
        let other = bundle(&[&[&[(-1, 1)], &[(0, 1)]], &[&[], &[(1, 1)]]]);
        assert_eq!(splitting_type(&other).unwrap().degrees(), &[1, -1]);
        assert!(!iso(&VectorBundle::split(&[1, -1]), &euler).unwrap());
        assert!(iso(&VectorBundle::split(&[1, -1]), &other).unwrap());
    }

    #[test]
    fn tampered_certificates_fail() {
        let e = random_bundle(&[2, 0, -1], 2, 11);
        let (_, f) = grothendieck_split(&e).unwrap();
        assert!(verify_factorization(&e, &f));

        let mut bad = f.clone();
        bad.w[(0, 0)] = &bad.w[(0, 0)] + &LaurentPoly::one();
        assert!(!verify_factorization(&e, &bad));

        let mut swapped = f.clone();
        let (a, b) = (swapped.d[(0, 0)].clone(), swapped.d[(2, 2)].clone());
        swapped.d[(0, 0)] = b;
        swapped.d[(2, 2)] = a;
        assert!(!verify_factorization(&e, &swapped));
    }

    #[test]
    fn scrambled_round_trip() {
        for seed in 0..10 {
            let e = random_bundle(&[3, 0, -2], 3, seed);
            let (t, f) = grothendieck_split(&e).unwrap();
            assert_eq!(t.degrees(), &[3, 0, -2]);
            assert!(verify_factorization(&e, &f));
        }
    }

    #[test]
    fn twist_shifts_type() {
        let e = bundle(&[&[&[(-1, 1)], &[(0, 1)]], &[&[], &[(1, 1)]]]);
        let t = splitting_type(&e.tensor(&VectorBundle::line(1))).unwrap();
        assert_eq!(t.degrees(), &[2, 0]);
    }

    #[test]
    fn gauge_invariance_with_explicit_moves() {
        let e = VectorBundle::split(&[1, 1, -2]);
        let moves = [
            GaugeMove::shear(
                3,
                2,
                0,
                LaurentPoly::from_ints(&[(0, 1), (-2, 3)]),
                GaugeSide::Infinity,
            ),
            GaugeMove::shear(
                3,
                0,
                1,
                LaurentPoly::from_ints(&[(1, -1), (3, 1)]),
                GaugeSide::Origin,
            ),
            GaugeMove::shear(
                3,
                1,
                2,
                LaurentPoly::from_ints(&[(2, 2)]),
                GaugeSide::Origin,
            ),
        ];
        let g = e.gauge(&moves).unwrap();
        assert_eq!(splitting_type(&g).unwrap(), splitting_type(&e).unwrap());
    }

    #[test]
    fn self_duality() {
        assert!(is_self_dual(&VectorBundle::split(&[1, -1])).unwrap());
        assert!(!is_self_dual(&VectorBundle::split(&[2, 0])).unwrap());
        assert!(is_self_dual(&VectorBundle::trivial(3)).unwrap());
    }

    #[test]
    fn line_bundles_iso_iff_same_degree() {
        for a in -3..=3 {
            for b in -3..=3 {
                let same = iso(&VectorBundle::line(a), &VectorBundle::line(b)).unwrap();
                assert_eq!(same, a == b);
            }
        }
    }
}
