//! Matrices over Laurent polynomials and over `Q(i)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};
use crate::laurent::{ChartRing, LaurentPoly};

/// Dense row-major matrix of Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| LaurentPoly::one()).collect())
    }

    pub fn diagonal(diag: Vec<LaurentPoly>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// `diag(z^e_0, z^e_1, ...)`.
    pub fn monomial_diagonal(exponents: &[i64]) -> Self {
        Self::diagonal(exponents.iter().map(|&e| LaurentPoly::z_pow(e)).collect())
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {ncols}",
                rows[bad].len()
            )));
        }
        Ok(LaurentMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer-coefficient constructor for tests: each entry is a list of
    /// `(exponent, coefficient)` pairs.
    pub fn from_int_terms(rows: &[&[&[(i64, i64)]]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|t| LaurentPoly::from_ints(t)).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.entries.iter()
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of a chain of matrices, left to right.
    pub fn product<'a, I>(factors: I) -> Result<LaurentMatrix>
    where
        I: IntoIterator<Item = &'a LaurentMatrix>,
    {
        let mut it = factors.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::DimensionMismatch("empty product".into()))?;
        it.try_fold(first.clone(), |acc, m| acc.mul(m))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn map_entries(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &LaurentMatrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &LaurentMatrix) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        m[(i * other.rows + p, j * other.cols + q)] = a * &other[(p, q)];
                    }
                }
            }
        }
        m
    }

    /// Matrix with row `i` and column `j` deleted.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                entries.push(self[(r, c)].clone());
            }
        }
        LaurentMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Lower-right block starting at `(from, from)`.
    pub fn trailing_block(&self, from: usize) -> Self {
        let n = self.rows - from;
        let m = self.cols - from;
        let mut b = Self::zeros(n, m);
        for i in 0..n {
            for j in 0..m {
                b[(i, j)] = self[(from + i, from + j)].clone();
            }
        }
        b
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += factor * row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &LaurentPoly) {
        for j in 0..self.cols {
            let s = &self[(source, j)];
            if !s.is_zero() {
                let delta = factor * s;
                self[(target, j)] = &self[(target, j)] + &delta;
            }
        }
    }

    /// `col[target] += factor * col[source]`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &LaurentPoly) {
        for i in 0..self.rows {
            let s = &self[(i, source)];
            if !s.is_zero() {
                let delta = s * factor;
                self[(i, target)] = &self[(i, target)] + &delta;
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &LaurentPoly) {
        for j in 0..self.cols {
            self[(i, j)] = &self[(i, j)] * c;
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &LaurentPoly) {
        for i in 0..self.rows {
            self[(i, j)] = &self[(i, j)] * c;
        }
    }

    /// Largest absolute exponent over all entries.
    pub fn max_abs_exponent(&self) -> i64 {
        self.entries
            .iter()
            .map(LaurentPoly::max_abs_exponent)
            .max()
            .unwrap_or(0)
    }

    /// Smallest exponent over all nonzero entries.
    pub fn min_exponent(&self) -> Option<i64> {
        self.entries.iter().filter_map(LaurentPoly::ord).min()
    }

    /// Largest exponent over all nonzero entries.
    pub fn max_exponent(&self) -> Option<i64> {
        self.entries.iter().filter_map(LaurentPoly::deg).max()
    }

    pub fn is_in_ring(&self, ring: ChartRing) -> bool {
        self.entries.iter().all(|e| ring.contains(e))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn det(&self) -> Result<LaurentPoly> {
        mat_det(self)
    }

    /// Exact inverse via the adjugate; requires `det` to be a unit `c·z^e`.
    pub fn inverse(&self) -> Result<LaurentMatrix> {
        let det = self.det()?;
        let (c, e) = det
            .as_unit()
            .ok_or_else(|| Error::InvalidInput(format!("determinant {det} is not a unit")))?;
        let det_inv = LaurentPoly::monomial(c.inverse()?, -e);
        Ok(adjugate(self)?.scale(&det_inv))
    }
}

impl std::ops::Index<(usize, usize)> for LaurentMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for LaurentMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for LaurentMatrix {
    /// One line in the matrix grammar: `a, b ; c, d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Determinant: cofactor expansion up to 3x3, fraction-free elimination
/// beyond.
pub fn mat_det(a: &LaurentMatrix) -> Result<LaurentPoly> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            a.rows, a.cols
        )));
    }
    if a.rows <= 3 {
        Ok(det_cofactor(a))
    } else {
        det_bareiss(a)
    }
}

fn det_cofactor(a: &LaurentMatrix) -> LaurentPoly {
    match a.rows {
        1 => a[(0, 0)].clone(),
        2 => &(&a[(0, 0)] * &a[(1, 1)]) - &(&a[(0, 1)] * &a[(1, 0)]),
        n => {
            let mut acc = LaurentPoly::zero();
            for j in 0..n {
                if a[(0, j)].is_zero() {
                    continue;
                }
                let term = &a[(0, j)] * &det_cofactor(&a.minor(0, j));
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Bareiss elimination; every division is exact in the Laurent ring.
fn det_bareiss(a: &LaurentMatrix) -> Result<LaurentPoly> {
    let n = a.rows;
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        // Sparsest nonzero pivot keeps intermediate polynomials small.
        let Some(p) = (k..n)
            .filter(|&i| !m[(i, k)].is_zero())
            .min_by_key(|&i| m[(i, k)].num_terms())
        else {
            return Ok(LaurentPoly::zero());
        };
        if p != k {
            m.swap_rows(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[(i, j)] * &m[(k, k)]) - &(&m[(i, k)] * &m[(k, j)]);
                m[(i, j)] = num.div_exact(&prev)?;
            }
            m[(i, k)] = LaurentPoly::zero();
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    Ok(if negate { -d } else { d })
}

/// Transposed cofactor matrix.
pub fn adjugate(a: &LaurentMatrix) -> Result<LaurentMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "adjugate of a non-square matrix".into(),
        ));
    }
    let n = a.rows;
    if n == 1 {
        return Ok(LaurentMatrix::identity(1));
    }
    let mut adj = LaurentMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let c = mat_det(&a.minor(i, j))?;
            adj[(j, i)] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    Ok(adj)
}

/// True iff all entries lie in `ring` and the determinant is a nonzero
/// constant.
pub fn is_unimodular(a: &LaurentMatrix, ring: ChartRing) -> bool {
    if !a.is_square() || !a.is_in_ring(ring) {
        return false;
    }
    match mat_det(a) {
        Ok(d) => d.as_constant().is_some_and(|c| !c.is_zero()),
        Err(_) => false,
    }
}

/// A unimodular matrix together with its inverse.
#[derive(Debug, Clone)]
pub struct Completion {
    /// First column equals the input column; determinant 1 when rank > 1.
    pub matrix: LaurentMatrix,
    /// `inverse · column = e_1`.
    pub inverse: LaurentMatrix,
}

/// Completes a column whose entries have a unit gcd in `ring` to a unimodular
/// matrix, returning the inverse as well.
///
/// Euclidean reduction across components: the component of least degree
/// reduces all others until a single (constant) component survives. Each
/// step is an elementary row operation over `ring`; the inverse operations,
/// composed in reverse, give the completion.
pub fn unimodular_completion(s: &[LaurentPoly], ring: ChartRing) -> Result<Completion> {
    let k = s.len();
    if k == 0 {
        return Err(Error::DimensionMismatch("empty column".into()));
    }
    if let Some(bad) = s.iter().find(|p| !ring.contains(p)) {
        return Err(Error::InvalidInput(format!(
            "entry {bad} lies outside {ring:?}"
        )));
    }
    let mut v = s.to_vec();
    let mut fwd = LaurentMatrix::identity(k);
    let mut inv = LaurentMatrix::identity(k);
    let pivot = loop {
        let live: Vec<usize> = (0..k).filter(|&i| !v[i].is_zero()).collect();
        let p = *live
            .iter()
            .min_by_key(|&&i| (ring.degree_of(&v[i]), i))
            .ok_or_else(|| Error::NotUnimodularlyCompletable("zero column".into()))?;
        if live.len() == 1 {
            break p;
        }
        for &i in live.iter().filter(|&&i| i != p) {
            let (q, r) = ring.div_rem(&v[i], &v[p])?;
            v[i] = r;
            // row_i -= q row_p; its inverse adds q·col_i into col_p.
            fwd.add_row_multiple(i, p, &-&q);
            inv.add_col_multiple(p, i, &q);
        }
    };
    let c = v[pivot].as_constant().ok_or_else(|| {
        Error::NotUnimodularlyCompletable(format!("components share the factor {}", v[pivot]))
    })?;
    let mut det = c.clone();
    if pivot != 0 {
        fwd.swap_rows(pivot, 0);
        inv.swap_cols(pivot, 0);
        det = -det;
    }
    fwd.scale_row(0, &LaurentPoly::constant(c.inverse()?));
    inv.scale_col(0, &LaurentPoly::constant(c));
    if k > 1 {
        inv.scale_col(k - 1, &LaurentPoly::constant(det.inverse()?));
        fwd.scale_row(k - 1, &LaurentPoly::constant(det));
    }
    Ok(Completion {
        matrix: inv,
        inverse: fwd,
    })
}

/// Unimodular matrix over `ring` whose first column is `s`.
pub fn unimodular_complete(s: &[LaurentPoly], ring: ChartRing) -> Result<LaurentMatrix> {
    unimodular_completion(s, ring).map(|c| c.matrix)
}

/// Dense matrix over `Q(i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged scalar matrix".into()));
        }
        Ok(ScalarMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        FractionFree::reduce(self).pivots.len()
    }
}

impl std::ops::Index<(usize, usize)> for ScalarMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ScalarMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]))
            .finish()
    }
}

/// Exact basis of the right null space, one vector per free column of the
/// reduced row echelon form, in increasing free-column order.
pub fn kernel_basis(m: &ScalarMatrix) -> Vec<Vec<GaussianRational>> {
    let ff = FractionFree::reduce(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ff.pivots {
        is_pivot[p] = true;
    }
    let diag: Vec<GaussianRational> = ff
        .pivots
        .iter()
        .enumerate()
        .map(|(row, &p)| ff.rows[row][p].to_scalar())
        .collect();
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![GaussianRational::zero(); m.cols];
            v[free] = GaussianRational::one();
            for (row, &p) in ff.pivots.iter().enumerate() {
                let a = &ff.rows[row][free];
                if !a.is_zero() {
                    v[p] = -(a.to_scalar() / &diag[row]);
                }
            }
            v
        })
        .collect()
}

/// Gaussian integer `re + im·i`, used only inside fraction-free elimination.
#[derive(Clone, Default)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt {
                re: &self.re * &o.re,
                im: BigInt::zero(),
            };
        }
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Division known to be exact.
    fn div_exact(&self, o: &GaussInt) -> GaussInt {
        if o.im.is_zero() {
            debug_assert!((&self.re % &o.re).is_zero() && (&self.im % &o.re).is_zero());
            return GaussInt {
                re: &self.re / &o.re,
                im: &self.im / &o.re,
            };
        }
        let n = &o.re * &o.re + &o.im * &o.im;
        let c = GaussInt {
            re: o.re.clone(),
            im: -&o.im,
        };
        let t = self.mul(&c);
        debug_assert!((&t.re % &n).is_zero() && (&t.im % &n).is_zero());
        GaussInt {
            re: t.re / &n,
            im: t.im / &n,
        }
    }

    fn to_scalar(&self) -> GaussianRational {
        GaussianRational::new(
            Rational::from_integer(self.re.clone()),
            Rational::from_integer(self.im.clone()),
        )
    }
}

/// Fraction-free Gauss–Jordan form: every pivot row has the same nonzero
/// diagonal value in its pivot column and zeros in the other pivot columns.
/// Entries stay minors of the denominator-cleared input, so no gcds are taken.
struct FractionFree {
    rows: Vec<Vec<GaussInt>>,
    pivots: Vec<usize>,
}

impl FractionFree {
    fn reduce(m: &ScalarMatrix) -> FractionFree {
        let mut rows: Vec<Vec<GaussInt>> = (0..m.rows)
            .map(|i| clear_denominators(&m.data[i * m.cols..(i + 1) * m.cols]))
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut prev = GaussInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        };
        let mut r = 0;
        for c in 0..m.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| rows[i][c].re.bits() + rows[i][c].im.bits())
            else {
                continue;
            };
            rows.swap(p, r);
            let pivot = rows[r][c].clone();
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                let f = row[c].clone();
                for (j, x) in row.iter_mut().enumerate() {
                    let y = &pivot_row[j];
                    if x.is_zero() && (y.is_zero() || f.is_zero()) {
                        continue;
                    }
                    let mut t = x.mul(&pivot);
                    if !f.is_zero() && !y.is_zero() {
                        t = t.sub(&f.mul(y));
                    }
                    *x = t.div_exact(&prev);
                }
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        FractionFree { rows, pivots }
    }
}

/// Scales a row of Gaussian rationals by the lcm of its denominators.
fn clear_denominators(row: &[GaussianRational]) -> Vec<GaussInt> {
    let mut l = BigInt::one();
    for x in row {
        l = l.lcm(x.re().denom()).lcm(x.im().denom());
    }
    row.iter()
        .map(|x| GaussInt {
            re: x.re().numer() * (&l / x.re().denom()),
            im: x.im().numer() * (&l / x.im().denom()),
        })
        .collect()
}
