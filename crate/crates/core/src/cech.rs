//! Two-chart Čech cohomology of bundles on the Riemann sphere.
//!
//! `H^0` is the space of polynomial vectors `f(z)` with `T·f` holomorphic at
//! infinity, found exactly as the kernel of the coefficient-level
//! constraints. `H^1` is computed independently as the cokernel
//! `C[z, 1/z]^k / (C[w]^k + T·C[z]^k)`; modulo `C[w]^k` only the positive
//! exponents survive, so the oracle counts positive exponents not reached by
//! `T·C[z]^k`.
//!
//! Both are computed on finite windows. Writing a section as `f = T^-1 g`
//! with `g` polynomial in `w` bounds `deg f` by the largest exponent of
//! `T^-1`; dually every `z^e` with `e >= -ord(T^-1)` already lies in
//! `T·C[z]^k`. These give the safe windows, and each computation also checks
//! that widening the window by one changes nothing.

use crate::bundle::VectorBundle;
use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::laurent::LaurentPoly;
use crate::lmatrix::{kernel_basis, ScalarMatrix};

/// A global section in the chart-0 frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub components: Vec<LaurentPoly>,
}

impl Section {
    /// The same section in the chart-1 frame, `T·f`.
    pub fn at_infinity(&self, e: &VectorBundle) -> Vec<LaurentPoly> {
        let t = e.transition();
        (0..t.rows())
            .map(|i| {
                let mut acc = LaurentPoly::zero();
                for (j, f) in self.components.iter().enumerate() {
                    acc = &acc + &(&t[(i, j)] * f);
                }
                acc
            })
            .collect()
    }

    /// Re-substitution check: polynomial in `z`, and `T·f` polynomial in `w`.
    pub fn is_section_of(&self, e: &VectorBundle) -> bool {
        self.components.len() == e.rank()
            && self
                .components
                .iter()
                .all(|p| p.ord().is_none_or(|o| o >= 0))
            && self
                .at_infinity(e)
                .iter()
                .all(|p| p.deg().is_none_or(|d| d <= 0))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(LaurentPoly::is_zero)
    }
}

/// Truncation bound for Čech cochains: the largest polynomial degree of
/// chart-0 unknowns for `H^0`, the largest overlap exponent kept for `H^1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CechWindow(pub usize);

/// Smallest window that provably contains every section.
pub fn safe_h0_window(e: &VectorBundle) -> CechWindow {
    let top = e.inverse_transition().max_exponent().unwrap_or(0);
    CechWindow(top.max(0) as usize)
}

/// Smallest window beyond which every overlap exponent is a coboundary.
pub fn safe_h1_window(e: &VectorBundle) -> CechWindow {
    let bottom = e.inverse_transition().min_exponent().unwrap_or(0);
    CechWindow((-bottom - 1).max(0) as usize)
}

/// Constraint matrix for sections of degree `<= d`: one row per
/// (component, positive exponent) of `T·f`, one column per coefficient
/// `(j, t)` of `f`, indexed `j·(d+1) + t`.
fn h0_constraints(e: &VectorBundle, d: usize) -> ScalarMatrix {
    let t = e.transition();
    let k = e.rank();
    let width = d + 1;
    let top = t.max_exponent().unwrap_or(0) + d as i64;
    let per_component = top.max(0) as usize;
    let mut m = ScalarMatrix::zeros(k * per_component, k * width);
    for i in 0..k {
        for j in 0..k {
            for (a, c) in t[(i, j)].terms() {
                for s in 0..width {
                    let exp = a + s as i64;
                    if exp >= 1 {
                        m[(i * per_component + (exp - 1) as usize, j * width + s)] = c.clone();
                    }
                }
            }
        }
    }
    m
}

fn vector_to_section(v: &[GaussianRational], k: usize, d: usize) -> Section {
    let width = d + 1;
    Section {
        components: (0..k)
            .map(|j| {
                LaurentPoly::from_terms((0..width).map(|s| (s as i64, v[j * width + s].clone())))
            })
            .collect(),
    }
}

/// Basis of the sections whose components have degree `<= window`.
pub fn h0_sections(e: &VectorBundle, window: CechWindow) -> Vec<Section> {
    let m = h0_constraints(e, window.0);
    kernel_basis(&m)
        .iter()
        .map(|v| vector_to_section(v, e.rank(), window.0))
        .collect()
}

/// Sections at `window`, after checking that `window + 1` finds nothing new.
///
/// The kernel at `window` is the part of the kernel at `window + 1` with
/// vanishing top coefficients, so a single elimination at `window + 1`
/// settles both.
pub fn h0_sections_checked(e: &VectorBundle, window: CechWindow) -> Result<Vec<Section>> {
    let wider = window.0 + 1;
    let basis = h0_sections(e, CechWindow(wider));
    let top_rows: Vec<Vec<GaussianRational>> = basis
        .iter()
        .map(|s| s.components.iter().map(|p| p.coeff(wider as i64)).collect())
        .collect();
    let top_rank = if top_rows.is_empty() {
        0
    } else {
        ScalarMatrix::from_rows(top_rows)?.rank()
    };
    if top_rank != 0 {
        return Err(Error::WindowUnstable {
            window: window.0,
            at_window: basis.len() - top_rank,
            at_next: basis.len(),
        });
    }
    Ok(basis)
}

/// `dim H^0(E)` at the safe window.
pub fn h0_dim(e: &VectorBundle) -> Result<usize> {
    h0_dim_at(e, safe_h0_window(e))
}

/// `dim H^0(E)` at an explicit window, stability-checked.
pub fn h0_dim_at(e: &VectorBundle, window: CechWindow) -> Result<usize> {
    h0_sections_checked(e, window).map(|b| b.len())
}

/// Basis of `H^0(E)` at the safe window.
pub fn h0_basis(e: &VectorBundle) -> Result<Vec<Section>> {
    h0_sections_checked(e, safe_h0_window(e))
}

/// Truncated cokernel dimension: positive exponents `1..=window` in each
/// component, modulo the projections of `T·f` for polynomial `f`.
fn h1_truncated(e: &VectorBundle, window: usize) -> usize {
    let t = e.transition();
    let k = e.rank();
    if window == 0 {
        return 0;
    }
    // z^s·v contributes to exponents <= window only while s + ord(T) <= window.
    let max_source = window as i64 - t.min_exponent().unwrap_or(0);
    if max_source < 0 {
        return k * window;
    }
    let width = max_source as usize + 1;
    let mut m = ScalarMatrix::zeros(k * window, k * width);
    for i in 0..k {
        for j in 0..k {
            for (a, c) in t[(i, j)].terms() {
                for s in 0..width {
                    let exp = a + s as i64;
                    if (1..=window as i64).contains(&exp) {
                        m[(i * window + (exp - 1) as usize, j * width + s)] = c.clone();
                    }
                }
            }
        }
    }
    k * window - m.rank()
}

/// `dim H^1(E)` on an explicit window, checked against `window + 1`.
pub fn h1_dim_oracle(e: &VectorBundle, window: CechWindow) -> Result<usize> {
    let here = h1_truncated(e, window.0);
    let next = h1_truncated(e, window.0 + 1);
    if here != next {
        return Err(Error::WindowUnstable {
            window: window.0,
            at_window: here,
            at_next: next,
        });
    }
    Ok(here)
}

/// `dim H^1(E)` at the safe window.
pub fn h1_dim(e: &VectorBundle) -> Result<usize> {
    h1_dim_oracle(e, safe_h1_window(e))
}

/// `h0 - h1`.
pub fn euler_char(e: &VectorBundle) -> Result<i64> {
    Ok(h0_dim(e)? as i64 - h1_dim(e)? as i64)
}

/// `m -> h0(E ⊗ O(m))` for `m` in `lo..=hi`.
pub fn h0_profile(e: &VectorBundle, lo: i64, hi: i64) -> Result<Vec<(i64, usize)>> {
    if lo > hi {
        return Err(Error::InvalidInput(format!(
            "empty twist range [{lo}, {hi}]"
        )));
    }
    // Twists inherit the cached inverse.
    let _ = e.inverse_transition();
    (lo..=hi).map(|m| Ok((m, h0_dim(&e.twist(m))?))).collect()
}

/// Inverts `h(m) = Σ max(0, d_i + m + 1)`.
///
/// The profile must be contiguous and cover `h = 0` at its first point and
/// `h(m) - h(m-1) = rank` at its last. Returns degrees sorted nonincreasing.
pub fn splitting_type_from_profile(rank: usize, profile: &[(i64, usize)]) -> Result<Vec<i64>> {
    if profile.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::InvalidInput("profile is not contiguous".into()));
    }
    let first_zero = profile.first().is_some_and(|p| p.1 == 0);
    // Number of degrees d with d >= -m, for each m after the first.
    let jumps: Vec<(i64, usize)> = profile
        .windows(2)
        .map(|w| (w[1].0, w[1].1.saturating_sub(w[0].1)))
        .collect();
    if !first_zero || jumps.last().is_none_or(|j| j.1 != rank) {
        return Err(Error::InvalidInput(
            "profile range too narrow to determine the type".into(),
        ));
    }
    let mut degrees = Vec::with_capacity(rank);
    let mut prev = 0;
    for (m, count) in jumps {
        for _ in prev..count {
            degrees.push(-m);
        }
        prev = prev.max(count);
    }
    Ok(degrees)
}
