//! Vector bundles on the Riemann sphere as Laurent transition matrices.
//!
//! Convention: `O(d)` has the 1x1 transition `z^-d`, twisting by `O(m)`
//! multiplies the transition by `z^-m`, and `deg E = -e` where
//! `det T = c·z^e`. A section is a polynomial vector `f(z)` with `T·f`
//! holomorphic in `w = 1/z`, so `h0(O(d)) = d + 1` for `d >= 0`.

use std::fmt;
use std::sync::OnceLock;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::laurent::{ChartRing, LaurentPoly};
use crate::lmatrix::LaurentMatrix;

/// A holomorphic vector bundle given by its transition matrix on `C*`.
#[derive(Clone)]
pub struct VectorBundle {
    transition: LaurentMatrix,
    det_coeff: GaussianRational,
    det_exponent: i64,
    inverse: OnceLock<LaurentMatrix>,
}

impl VectorBundle {
    /// Accepts `t` iff it is square with determinant `c·z^e`, `c != 0`.
    pub fn new(t: LaurentMatrix) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::InvalidBundle(format!(
                "transition must be square, got {}x{}",
                t.rows(),
                t.cols()
            )));
        }
        let det = t.det()?;
        let (det_coeff, det_exponent) = det.as_unit().ok_or_else(|| {
            Error::InvalidBundle(format!(
                "determinant {det} is not of the form c*z^e, so the transition is singular somewhere on C*"
            ))
        })?;
        Ok(VectorBundle {
            transition: t,
            det_coeff,
            det_exponent,
            inverse: OnceLock::new(),
        })
    }

    /// `O(d)`.
    pub fn line(d: i64) -> Self {
        Self::new(LaurentMatrix::monomial_diagonal(&[-d])).expect("monomial is a unit")
    }

    /// `O(d_1) ⊕ ... ⊕ O(d_k)` in diagonal form.
    pub fn split(degrees: &[i64]) -> Self {
        let exps: Vec<i64> = degrees.iter().map(|d| -d).collect();
        Self::new(LaurentMatrix::monomial_diagonal(&exps)).expect("monomial diagonal is a unit")
    }

    pub fn trivial(rank: usize) -> Self {
        Self::split(&vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.transition.rows()
    }

    pub fn transition(&self) -> &LaurentMatrix {
        &self.transition
    }

    /// `(c, e)` with `det T = c·z^e`.
    pub fn det_unit(&self) -> (&GaussianRational, i64) {
        (&self.det_coeff, self.det_exponent)
    }

    pub fn degree(&self) -> i64 {
        -self.det_exponent
    }

    /// `T^-1`, computed once.
    pub fn inverse_transition(&self) -> &LaurentMatrix {
        self.inverse.get_or_init(|| {
            self.transition
                .inverse()
                .expect("validated transition has a unit determinant")
        })
    }

    /// Transition `(T^-1)^t`.
    pub fn dual(&self) -> VectorBundle {
        let t = self.inverse_transition().transpose();
        let b = VectorBundle {
            transition: t,
            det_coeff: self.det_coeff.inverse().expect("nonzero"),
            det_exponent: -self.det_exponent,
            inverse: OnceLock::new(),
        };
        let _ = b.inverse.set(self.transition.transpose());
        b
    }

    /// The line bundle with transition `det T`.
    pub fn det_bundle(&self) -> VectorBundle {
        VectorBundle::new(
            LaurentMatrix::monomial_diagonal(&[self.det_exponent])
                .scale(&LaurentPoly::constant(self.det_coeff.clone())),
        )
        .expect("unit")
    }

    pub fn direct_sum(&self, other: &VectorBundle) -> VectorBundle {
        VectorBundle::new(self.transition.direct_sum(&other.transition))
            .expect("block diagonal of invertible transitions")
    }

    pub fn tensor(&self, other: &VectorBundle) -> VectorBundle {
        VectorBundle::new(self.transition.kronecker(&other.transition))
            .expect("Kronecker product of invertible transitions")
    }

    /// `E ⊗ O(m)`: transition `z^-m · T`.
    pub fn twist(&self, m: i64) -> VectorBundle {
        if m == 0 {
            return self.clone();
        }
        let k = self.rank() as i64;
        let b = VectorBundle {
            transition: self.transition.map_entries(|p| p.shift(-m)),
            det_coeff: self.det_coeff.clone(),
            det_exponent: self.det_exponent - k * m,
            inverse: OnceLock::new(),
        };
        if let Some(inv) = self.inverse.get() {
            let _ = b.inverse.set(inv.map_entries(|p| p.shift(m)));
        }
        b
    }

    /// Applies gauge moves; the result is isomorphic to `self`.
    pub fn gauge(&self, moves: &[GaugeMove]) -> Result<VectorBundle> {
        VectorBundle::new(scramble(&self.transition, moves)?)
    }
}

impl PartialEq for VectorBundle {
    fn eq(&self, other: &Self) -> bool {
        self.transition == other.transition
    }
}

impl Eq for VectorBundle {}

impl fmt::Debug for VectorBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorBundle")
            .field("rank", &self.rank())
            .field("degree", &self.degree())
            .field("transition", &self.transition)
            .finish()
    }
}

/// Which chart a gauge move lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeSide {
    /// Left multiplication by a matrix unimodular over `C[w]`.
    Infinity,
    /// Right multiplication by a matrix unimodular over `C[z]`.
    Origin,
}

impl GaugeSide {
    pub fn ring(self) -> ChartRing {
        match self {
            GaugeSide::Infinity => ChartRing::WChart,
            GaugeSide::Origin => ChartRing::ZChart,
        }
    }
}

/// A change of frame on one chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeMove {
    pub side: GaugeSide,
    pub matrix: LaurentMatrix,
}

impl GaugeMove {
    /// `I + f·E_{row,col}` on the given side; `f` must lie in the side's ring.
    pub fn shear(rank: usize, row: usize, col: usize, f: LaurentPoly, side: GaugeSide) -> Self {
        assert_ne!(row, col, "a shear needs distinct indices");
        let mut matrix = LaurentMatrix::identity(rank);
        matrix[(row, col)] = f;
        GaugeMove { side, matrix }
    }
}

/// `A_l ... A_1 · T · B_1 ... B_r` for the given left (infinity) and right
/// (origin) moves, in order.
pub fn scramble(t: &LaurentMatrix, moves: &[GaugeMove]) -> Result<LaurentMatrix> {
    let mut out = t.clone();
    for mv in moves {
        if !crate::lmatrix::is_unimodular(&mv.matrix, mv.side.ring()) {
            return Err(Error::InvalidInput(format!(
                "gauge move {:?} is not unimodular over {:?}",
                mv.matrix,
                mv.side.ring()
            )));
        }
        out = match mv.side {
            GaugeSide::Infinity => mv.matrix.mul(&out)?,
            GaugeSide::Origin => out.mul(&mv.matrix)?,
        };
    }
    Ok(out)
}

/// Small nonzero scalars used by the generator; `i` appears so that the
/// Gaussian part of the arithmetic is exercised.
fn random_scalar(rng: &mut ChaCha8Rng) -> GaussianRational {
    match rng.random_range(0..10) {
        0 => GaussianRational::i(),
        1 => -GaussianRational::i(),
        2 => GaussianRational::from_int(2),
        3 => GaussianRational::from_int(-2),
        4..=6 => GaussianRational::one(),
        _ => GaussianRational::from_int(-1),
    }
}

/// Random polynomial of degree `<= degree` in the side's coordinate, never
/// zero.
fn random_gauge_poly(rng: &mut ChaCha8Rng, degree: u32, side: GaugeSide) -> LaurentPoly {
    let sign = match side {
        GaugeSide::Origin => 1,
        GaugeSide::Infinity => -1,
    };
    let mut p = LaurentPoly::zero();
    for e in 0..=degree as i64 {
        if rng.random_bool(0.6) {
            p.add_term(sign * e, &random_scalar(rng));
        }
    }
    if p.is_zero() {
        p = LaurentPoly::monomial(random_scalar(rng), sign * degree as i64);
    }
    p
}

/// Seeded sequence of elementary gauge moves for a rank-`k` bundle: on each
/// side, `k` polynomial shears and one constant matrix (a permutation times
/// a diagonal scaling).
pub fn random_gauge_moves(rank: usize, gauge_degree: u32, seed: u64) -> Vec<GaugeMove> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut moves = Vec::new();
    for side in [GaugeSide::Infinity, GaugeSide::Origin] {
        if rank > 1 {
            for _ in 0..rank {
                let row = rng.random_range(0..rank);
                let col = (row + rng.random_range(1..rank)) % rank;
                let f = random_gauge_poly(&mut rng, gauge_degree, side);
                moves.push(GaugeMove::shear(rank, row, col, f, side));
            }
        }
        let mut perm: Vec<usize> = (0..rank).collect();
        perm.shuffle(&mut rng);
        let mut matrix = LaurentMatrix::zeros(rank, rank);
        for (i, &j) in perm.iter().enumerate() {
            matrix[(i, j)] = LaurentPoly::constant(random_scalar(&mut rng));
        }
        moves.push(GaugeMove { side, matrix });
    }
    moves
}

/// A bundle of known splitting type: `diag(z^-d_i)` scrambled by
/// [`random_gauge_moves`]. Deterministic in `(degrees, gauge_degree, seed)`.
pub fn random_bundle(degrees: &[i64], gauge_degree: u32, seed: u64) -> VectorBundle {
    let base = VectorBundle::split(degrees);
    let moves = random_gauge_moves(degrees.len(), gauge_degree, seed);
    base.gauge(&moves)
        .expect("elementary gauge moves preserve validity")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let b = VectorBundle::new(LaurentMatrix::monomial_diagonal(&[-1, 2])).unwrap();
        assert_eq!(b.rank(), 2);
        let euler = LaurentMatrix::from_int_terms(&[&[&[(1, 1)], &[(0, 1)]], &[&[], &[(-1, 1)]]]);
        let b = VectorBundle::new(euler).unwrap();
        assert_eq!(b.det_unit().1, 0);
        let bad = LaurentMatrix::from_int_terms(&[&[&[(1, 1)], &[]], &[&[], &[(1, 1), (0, 1)]]]);
        assert!(matches!(
            VectorBundle::new(bad),
            Err(Error::InvalidBundle(_))
        ));
        assert!(matches!(
            VectorBundle::new(LaurentMatrix::zeros(2, 2)),
            Err(Error::InvalidBundle(_))
        ));
    }

    #[test]
    fn degrees() {
        assert_eq!(VectorBundle::line(3).degree(), 3);
        assert_eq!(
            VectorBundle::line(3).transition()[(0, 0)],
            LaurentPoly::z_pow(-3)
        );
        assert_eq!(VectorBundle::split(&[2, -1]).degree(), 1);
    }

    #[test]
    fn operations_on_line_bundles() {
        for d in -4..=4 {
            assert_eq!(VectorBundle::line(d).dual(), VectorBundle::line(-d));
        }
        assert_eq!(
            VectorBundle::line(1).tensor(&VectorBundle::line(2)),
            VectorBundle::line(3)
        );
        assert_eq!(
            VectorBundle::split(&[2, -1]).det_bundle(),
            VectorBundle::line(1)
        );
        assert_eq!(VectorBundle::line(2).twist(3), VectorBundle::line(5));
        let e = random_bundle(&[1, 0, -2], 2, 9);
        assert_eq!(e.twist(0), e);
    }

    #[test]
    fn dual_transition_is_inverse_transpose() {
        let e = random_bundle(&[2, -1], 2, 4);
        let d = e.dual();
        let prod = e.transition().transpose().mul(d.transition()).unwrap();
        assert_eq!(prod, LaurentMatrix::identity(2));
        assert_eq!(d.degree(), -e.degree());
        assert_eq!(d.inverse_transition(), &e.transition().transpose());
    }

    #[test]
    fn twist_keeps_cached_inverse_consistent() {
        let e = random_bundle(&[1, -1], 1, 2);
        let _ = e.inverse_transition();
        let t = e.twist(-3);
        assert_eq!(
            t.transition().mul(t.inverse_transition()).unwrap(),
            LaurentMatrix::identity(2)
        );
        assert_eq!(t.degree(), e.degree() - 6);
    }

    #[test]
    fn explicit_gauge_examples() {
        let d = VectorBundle::split(&[2, -1]);
        assert_eq!(d.gauge(&[]).unwrap(), d);
        let shear = GaugeMove::shear(2, 0, 1, LaurentPoly::z_pow(-1), GaugeSide::Infinity);
        let e = d.gauge(&[shear]).unwrap();
        let expected =
            LaurentMatrix::from_int_terms(&[&[&[(-2, 1)], &[(0, 1)]], &[&[], &[(1, 1)]]]);
        assert_eq!(e.transition(), &expected);
    }

    #[test]
    fn gauge_rejects_non_unimodular_moves() {
        let bad = GaugeMove::shear(2, 0, 1, LaurentPoly::z_pow(1), GaugeSide::Infinity);
        assert!(VectorBundle::trivial(2).gauge(&[bad]).is_err());
    }

    #[test]
    fn random_bundles_are_valid_and_deterministic() {
        for seed in 0..20 {
            let degrees = [3, 0, -2, 1];
            let e = random_bundle(&degrees, 3, seed);
            assert_eq!(e.degree(), degrees.iter().sum::<i64>());
            assert_eq!(e, random_bundle(&degrees, 3, seed));
        }
        assert_ne!(random_bundle(&[1, 0], 2, 1), random_bundle(&[1, 0], 2, 2));
    }

    #[test]
    fn degree_identities() {
        for seed in 0..10 {
            let e = random_bundle(&[2, -1], 2, seed);
            let f = random_bundle(&[0, 1, -3], 1, seed + 100);
            assert_eq!(e.direct_sum(&f).degree(), e.degree() + f.degree());
            assert_eq!(e.det_bundle().degree(), e.degree());
            assert_eq!(
                e.tensor(&f).degree(),
                f.rank() as i64 * e.degree() + e.rank() as i64 * f.degree()
            );
            for m in -2..=2 {
                assert_eq!(e.twist(m).degree(), e.degree() + 2 * m);
            }
        }
    }
}
