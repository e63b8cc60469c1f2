//! Laurent polynomials in `z` over `Q(i)` and the Euclidean machinery of the
//! two chart rings `C[z]` and `C[w] = C[1/z]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::GaussianRational;

/// The polynomial ring of one chart, read in the `z` coordinate.
///
/// `ZChart` is `C[z]` (exponents `>= 0`), `WChart` is `C[w]` with `w = 1/z`
/// (exponents `<= 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartRing {
    ZChart,
    WChart,
}

impl ChartRing {
    pub fn other(self) -> ChartRing {
        match self {
            ChartRing::ZChart => ChartRing::WChart,
            ChartRing::WChart => ChartRing::ZChart,
        }
    }

    pub fn contains(self, p: &LaurentPoly) -> bool {
        match self {
            ChartRing::ZChart => p.ord().is_none_or(|o| o >= 0),
            ChartRing::WChart => p.deg().is_none_or(|d| d <= 0),
        }
    }

    /// Moves `p` into `C[z]` coordinates: identity on the z-chart, `z -> 1/z`
    /// on the w-chart. An involution.
    fn to_z(self, p: &LaurentPoly) -> LaurentPoly {
        match self {
            ChartRing::ZChart => p.clone(),
            ChartRing::WChart => p.reflect(),
        }
    }

    /// Degree of `p` as an element of this ring.
    pub fn degree_of(self, p: &LaurentPoly) -> Option<i64> {
        match self {
            ChartRing::ZChart => p.deg(),
            ChartRing::WChart => p.ord().map(|o| -o),
        }
    }

    /// Leading coefficient with respect to [`ChartRing::degree_of`].
    pub fn leading_coeff(self, p: &LaurentPoly) -> Option<&GaussianRational> {
        match self {
            ChartRing::ZChart => p.terms.iter().next_back().map(|(_, c)| c),
            ChartRing::WChart => p.terms.iter().next().map(|(_, c)| c),
        }
    }

    /// Euclidean division inside the ring: `a = q·b + r` with
    /// `degree_of(r) < degree_of(b)`.
    pub fn div_rem(self, a: &LaurentPoly, b: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::InvalidInput(format!(
                "operands outside {self:?}: {a}, {b}"
            )));
        }
        let (q, r) = poly_div_rem(&self.to_z(a), &self.to_z(b))?;
        Ok((self.to_z(&q), self.to_z(&r)))
    }
}

/// Finite sum of terms `c·z^e` with `c != 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: GaussianRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `z^exp`.
    pub fn z_pow(exp: i64) -> Self {
        Self::monomial(GaussianRational::one(), exp)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, GaussianRational)>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Integer coefficients, for tests and examples: `from_ints(&[(e, c), ..])`.
    pub fn from_ints(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(e, c)| (e, GaussianRational::from_int(c))),
        )
    }

    pub fn add_term(&mut self, exp: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Lowest exponent.
    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent.
    pub fn deg(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> GaussianRational {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `Some(c)` when `p` is a constant (including zero).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// `Some((c, e))` iff `p = c·z^e` with `c != 0`: the units of the
    /// Laurent ring.
    pub fn as_unit(&self) -> Option<(GaussianRational, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(&e, c)| (c.clone(), e))
    }

    /// Splits into exponents `<= cutoff` and `> cutoff`.
    pub fn split_at(&self, cutoff: i64) -> (LaurentPoly, LaurentPoly) {
        let mut low = self.terms.clone();
        let high = low.split_off(&(cutoff + 1));
        (LaurentPoly { terms: low }, LaurentPoly { terms: high })
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `z -> 1/z`.
    pub fn reflect(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Exact quotient `self / d` in the Laurent ring; errors unless `d`
    /// divides `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        let (Some(od), false) = (d.ord(), d.is_zero()) else {
            return Err(Error::DivisionByZero);
        };
        let Some(oa) = self.ord() else {
            return Ok(LaurentPoly::zero());
        };
        let (q, r) = poly_div_rem(&self.shift(-oa), &d.shift(-od))?;
        if !r.is_zero() {
            return Err(Error::InvalidInput(format!("{d} does not divide {self}")));
        }
        Ok(q.shift(oa - od))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Largest absolute exponent; 0 for the zero polynomial.
    pub fn max_abs_exponent(&self) -> i64 {
        self.ord()
            .into_iter()
            .chain(self.deg())
            .map(i64::abs)
            .max()
            .unwrap_or(0)
    }
}

/// Long division in `C[z]`; both arguments must have exponents `>= 0`.
fn poly_div_rem(a: &LaurentPoly, b: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    let Some(db) = b.deg() else {
        return Err(Error::DivisionByZero);
    };
    let lead_inv = b.coeff(db).inverse()?;
    let mut r = a.clone();
    let mut q = LaurentPoly::zero();
    while let Some(dr) = r.deg() {
        if dr < db {
            break;
        }
        let c = &r.coeff(dr) * &lead_inv;
        let shift = dr - db;
        for (e, bc) in b.terms() {
            r.add_term(e + shift, &-(bc * &c));
        }
        q.add_term(shift, &c);
    }
    Ok((q, r))
}

/// Extended Euclid in a chart ring: returns `(d, u, v)` with
/// `u·f + v·g = d`, `d` the monic gcd.
pub fn poly_gcd_bezout(
    f: &LaurentPoly,
    g: &LaurentPoly,
    ring: ChartRing,
) -> Result<(LaurentPoly, LaurentPoly, LaurentPoly)> {
    if !ring.contains(f) || !ring.contains(g) {
        return Err(Error::InvalidInput(format!(
            "gcd operands must lie in {ring:?}: {f}, {g}"
        )));
    }
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidInput("gcd(0, 0) is undefined".into()));
    }
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (LaurentPoly::one(), LaurentPoly::zero());
    let (mut t0, mut t1) = (LaurentPoly::zero(), LaurentPoly::one());
    while !r1.is_zero() {
        let (q, r) = ring.div_rem(&r0, &r1)?;
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let lead = ring.leading_coeff(&r0).expect("nonzero gcd").inverse()?;
    Ok((r0.scale(&lead), s0.scale(&lead), t0.scale(&lead)))
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<GaussianRational> for LaurentPoly {
    fn from(c: GaussianRational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents in the crate's term grammar, e.g.
    /// `-1*z^-1 + 3/4 + z^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (e, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, "z^{e}")?,
                (_, false) => write!(f, "{c}*z^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(terms)
    }

    #[test]
    fn arithmetic_examples() {
        // (z^-1 + 1)(z - 1) = z - z^-1
        let p = lp(&[(-1, 1), (0, 1)]);
        let q = lp(&[(1, 1), (0, -1)]);
        assert_eq!(&p * &q, lp(&[(1, 1), (-1, -1)]));
        assert_eq!(&p + &LaurentPoly::zero(), p);
        assert!((&LaurentPoly::z_pow(-1) * &LaurentPoly::z_pow(1)).is_one());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn units() {
        assert_eq!(
            lp(&[(-2, 3)]).as_unit(),
            Some((GaussianRational::from_int(3), -2))
        );
        assert_eq!(lp(&[(1, 1), (0, 1)]).as_unit(), None);
        assert_eq!(LaurentPoly::zero().as_unit(), None);
    }

    #[test]
    fn split_examples() {
        let p = lp(&[(-1, 2), (0, 3), (2, 5)]);
        let (low, high) = p.split_at(0);
        assert_eq!(low, lp(&[(-1, 2), (0, 3)]));
        assert_eq!(high, lp(&[(2, 5)]));
        let (low, high) = LaurentPoly::zero().split_at(4);
        assert!(low.is_zero() && high.is_zero());
        let (low, high) = lp(&[(3, 1)]).split_at(3);
        assert_eq!(low, lp(&[(3, 1)]));
        assert!(high.is_zero());
    }

    #[test]
    fn gcd_examples() {
        let z = ChartRing::ZChart;
        let (d, u, v) =
            poly_gcd_bezout(&lp(&[(2, 1), (0, -1)]), &lp(&[(1, 1), (0, -1)]), z).unwrap();
        assert_eq!(d, lp(&[(1, 1), (0, -1)]));
        assert!(u.is_zero());
        assert!(v.is_one());

        let f = lp(&[(1, 1)]);
        let g = lp(&[(0, 1), (1, -1)]);
        let (d, u, v) = poly_gcd_bezout(&f, &g, z).unwrap();
        assert!(d.is_one());
        assert!(u.is_one() && v.is_one());
        assert_eq!(&(&u * &f) + &(&v * &g), d);

        let f = lp(&[(2, 2), (0, 4)]);
        let (d, u, v) = poly_gcd_bezout(&f, &LaurentPoly::zero(), z).unwrap();
        assert_eq!(d, lp(&[(2, 1), (0, 2)]));
        assert_eq!(u, LaurentPoly::constant(GaussianRational::from_frac(1, 2)));
        assert!(v.is_zero());
    }

    #[test]
    fn gcd_in_w_chart_is_monic_in_w() {
        // 2w^2 - 2 and w - 1, written in z
        let f = lp(&[(-2, 2), (0, -2)]);
        let g = lp(&[(-1, 1), (0, -1)]);
        let (d, u, v) = poly_gcd_bezout(&f, &g, ChartRing::WChart).unwrap();
        assert_eq!(d, lp(&[(-1, 1), (0, -1)]));
        assert_eq!(&(&u * &f) + &(&v * &g), d);
    }

    #[test]
    fn gcd_rejects_out_of_ring_and_double_zero() {
        let z = ChartRing::ZChart;
        assert!(matches!(
            poly_gcd_bezout(&lp(&[(-1, 1)]), &LaurentPoly::one(), z),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            poly_gcd_bezout(&LaurentPoly::one(), &lp(&[(1, 1)]), ChartRing::WChart),
            Err(Error::InvalidInput(_))
        ));
        assert!(poly_gcd_bezout(&LaurentPoly::zero(), &LaurentPoly::zero(), z).is_err());
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(-3, 1), (-1, -1)]); // z^-3 - z^-1 = z^-3 (1 - z^2)
        let b = lp(&[(0, 1), (1, 1)]);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert!(lp(&[(0, 1)]).div_exact(&b).is_err());
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([
            (-2, GaussianRational::i()),
            (0, GaussianRational::from_frac(3, 4)),
            (5, GaussianRational::one()),
            (1, GaussianRational::from_int(-1)),
        ]);
        assert_eq!(p.to_string(), "(0,1)*z^-2 + 3/4 + -1*z^1 + z^5");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    fn arb_poly(lo: i64, hi: i64) -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((lo..=hi, -5i64..=5, 1i64..=3), 0..6).prop_map(|ts| {
            LaurentPoly::from_terms(
                ts.into_iter()
                    .map(|(e, n, d)| (e, GaussianRational::from_frac(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn split_reassembles(p in arb_poly(-8, 8), cutoff in -10i64..10) {
            let (low, high) = p.split_at(cutoff);
            prop_assert!(low.deg().is_none_or(|d| d <= cutoff));
            prop_assert!(high.ord().is_none_or(|o| o > cutoff));
            prop_assert_eq!(&low + &high, p);
        }

        #[test]
        fn ring_axioms(p in arb_poly(-4, 4), q in arb_poly(-4, 4), r in arb_poly(-4, 4)) {
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn bezout_certificate(
            f in arb_poly(0, 6),
            g in arb_poly(0, 6),
            chart in prop_oneof![Just(ChartRing::ZChart), Just(ChartRing::WChart)],
        ) {
            prop_assume!(!(f.is_zero() && g.is_zero()));
            let (f, g) = match chart {
                ChartRing::ZChart => (f, g),
                ChartRing::WChart => (f.reflect(), g.reflect()),
            };
            let (d, u, v) = poly_gcd_bezout(&f, &g, chart).unwrap();
            prop_assert_eq!(&(&u * &f) + &(&v * &g), d.clone());
            prop_assert!(chart.contains(&d) && chart.contains(&u) && chart.contains(&v));
            prop_assert!(chart.leading_coeff(&d).unwrap().is_one());
            prop_assert!(chart.div_rem(&f, &d).unwrap().1.is_zero());
            prop_assert!(chart.div_rem(&g, &d).unwrap().1.is_zero());
        }
    }
}
