//! Exact-rational vector bundles over finite bases.
//!
//! A bundle assigns a fibre dimension to every point of a finite base (the
//! objects of a groupoid, or its arrows for pullback bundles). Sections,
//! frame-groupoid arrows, bundle morphisms and bundle automorphisms are all
//! realised fibrewise by rational matrices and vectors.
//!
//! The frame groupoid `Φ(E)` is virtual: its arrow set is infinite, so a
//! [`FrameArrow`] is constructed on demand (invertibility checked by exact
//! elimination) rather than enumerated.

mod matrix;

pub use matrix::Matrix;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;

/// Exact rational scalar. The real coefficients of the smooth theory are
/// replaced by ℚ so that every equality check in the crate is exact.
pub type Scalar = num_rational::BigRational;

/// The rational `p/q`.
pub fn rat(p: i64, q: i64) -> Scalar {
    Scalar::new(num_bigint::BigInt::from(p), num_bigint::BigInt::from(q))
}

/// A vector bundle over a finite base; point `x` carries a fibre of
/// dimension `dims[x]`. Dimension zero is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorBundle {
    dims: Vec<usize>,
}

impl VectorBundle {
    pub fn new(dims: Vec<usize>) -> Self {
        Self { dims }
    }

    /// Constant fibre dimension over `n` points.
    pub fn constant(n: usize, dim: usize) -> Self {
        Self { dims: vec![dim; n] }
    }

    pub fn base_len(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total dimension of the section space `Γ(E) = ⊕_x E_x`.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Offset of point `x`'s block in the delta-section basis.
    pub fn offset(&self, x: usize) -> usize {
        self.dims[..x].iter().sum()
    }
}

/// The pullback bundle `α*E` over the arrow set: the fibre at an arrow `x`
/// is `E_{α(x)}`.
pub fn pullback_bundle(gpd: &FiniteGroupoid, e: &VectorBundle) -> VectorBundle {
    VectorBundle::new(gpd.arrows().map(|g| e.dim(gpd.src(g).0)).collect())
}

/// A section of a bundle: one rational vector per base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    values: Vec<Vec<Scalar>>,
}

impl Section {
    pub fn new(bundle: &VectorBundle, values: Vec<Vec<Scalar>>) -> Result<Self> {
        if values.len() != bundle.base_len() {
            return Err(Error::DimensionMismatch(format!(
                "section over {} points, bundle has {}",
                values.len(),
                bundle.base_len()
            )));
        }
        for (x, v) in values.iter().enumerate() {
            if v.len() != bundle.dim(x) {
                return Err(Error::DimensionMismatch(format!(
                    "section value at point {x} has length {}, fibre has dimension {}",
                    v.len(),
                    bundle.dim(x)
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn zero(bundle: &VectorBundle) -> Self {
        Self {
            values: bundle.dims().iter().map(|&d| vec![Scalar::zero(); d]).collect(),
        }
    }

    /// The delta section supported at `point` with `coord`-th unit vector.
    pub fn delta(bundle: &VectorBundle, point: usize, coord: usize) -> Self {
        let mut s = Self::zero(bundle);
        s.values[point][coord] = Scalar::one();
        s
    }

    pub fn value(&self, x: usize) -> &[Scalar] {
        &self.values[x]
    }

    pub fn set_value(&mut self, x: usize, v: Vec<Scalar>) {
        self.values[x] = v;
    }

    pub fn base_len(&self) -> usize {
        self.values.len()
    }

    pub fn add(&self, other: &Section) -> Result<Section> {
        if self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch("section addition over different bases".into()));
        }
        let mut out = Vec::with_capacity(self.values.len());
        for (a, b) in self.values.iter().zip(&other.values) {
            if a.len() != b.len() {
                return Err(Error::DimensionMismatch("section addition fibre mismatch".into()));
            }
            out.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
        Ok(Section { values: out })
    }

    pub fn scale(&self, s: &Scalar) -> Section {
        Section {
            values: self
                .values
                .iter()
                .map(|v| v.iter().map(|x| s * x).collect())
                .collect(),
        }
    }

    /// The module action of a scalar function on the base:
    /// `(f·ξ)(x) = f(x)·ξ(x)`.
    pub fn module_action(&self, f: &[Scalar]) -> Result<Section> {
        if f.len() != self.values.len() {
            return Err(Error::DimensionMismatch(format!(
                "scalar function on {} points, section over {}",
                f.len(),
                self.values.len()
            )));
        }
        Ok(Section {
            values: self
                .values
                .iter()
                .zip(f)
                .map(|(v, c)| v.iter().map(|x| c * x).collect())
                .collect(),
        })
    }

    /// Flattens into the delta-basis coordinate vector of `Γ(E)`.
    pub fn to_flat(&self) -> Vec<Scalar> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn from_flat(bundle: &VectorBundle, flat: &[Scalar]) -> Result<Self> {
        if flat.len() != bundle.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "flat vector of length {}, section space has dimension {}",
                flat.len(),
                bundle.total_dim()
            )));
        }
        let mut values = Vec::with_capacity(bundle.base_len());
        let mut at = 0;
        for &d in bundle.dims() {
            values.push(flat[at..at + d].to_vec());
            at += d;
        }
        Ok(Self { values })
    }
}

/// The pullback map `ψ: Γ(E) → Γ(α*E)`, `(ψξ)(x) = ξ(α(x))`.
pub fn pullback_section(gpd: &FiniteGroupoid, xi: &Section) -> Section {
    Section {
        values: gpd.arrows().map(|g| xi.value(gpd.src(g).0).to_vec()).collect(),
    }
}

/// An arrow of the frame groupoid `Φ(E)`: an invertible linear map
/// `E_src → E_tgt`, stored as a `dim(tgt) × dim(src)` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameArrow {
    pub src: usize,
    pub tgt: usize,
    pub matrix: Matrix,
}

impl FrameArrow {
    pub fn new(bundle: &VectorBundle, src: usize, tgt: usize, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != bundle.dim(tgt) || matrix.cols() != bundle.dim(src) {
            return Err(Error::DimensionMismatch(format!(
                "frame arrow {src} → {tgt} wants a {}×{} matrix, got {}×{}",
                bundle.dim(tgt),
                bundle.dim(src),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_invertible() {
            return Err(Error::SingularMatrix(format!(
                "frame arrow {src} → {tgt} must be invertible"
            )));
        }
        Ok(Self { src, tgt, matrix })
    }

    pub fn identity(bundle: &VectorBundle, x: usize) -> Self {
        Self {
            src: x,
            tgt: x,
            matrix: Matrix::identity(bundle.dim(x)),
        }
    }

    /// Composition of linear maps: `self ∘ other`, defined when
    /// `src(self) = tgt(other)`.
    pub fn compose(&self, other: &FrameArrow) -> Result<FrameArrow> {
        if self.src != other.tgt {
            return Err(Error::NotComposable {
                g: self.tgt,
                h: other.tgt,
                g_src: self.src,
                h_tgt: other.tgt,
            });
        }
        Ok(FrameArrow {
            src: other.src,
            tgt: self.tgt,
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn invert(&self) -> Result<FrameArrow> {
        Ok(FrameArrow {
            src: self.tgt,
            tgt: self.src,
            matrix: self.matrix.inverse()?,
        })
    }
}

/// A base-preserving bundle morphism `δ: E → F`: one matrix
/// `δ_x: E_x → F_x` per point, not necessarily invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleMorphism {
    pub maps: Vec<Matrix>,
}

impl BundleMorphism {
    pub fn new(e: &VectorBundle, f: &VectorBundle, maps: Vec<Matrix>) -> Result<Self> {
        if e.base_len() != f.base_len() || maps.len() != e.base_len() {
            return Err(Error::DimensionMismatch("bundle morphism over different bases".into()));
        }
        for (x, m) in maps.iter().enumerate() {
            if m.rows() != f.dim(x) || m.cols() != e.dim(x) {
                return Err(Error::DimensionMismatch(format!(
                    "morphism at point {x} must be {}×{}, got {}×{}",
                    f.dim(x),
                    e.dim(x),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self { maps })
    }

    pub fn identity(e: &VectorBundle) -> Self {
        Self {
            maps: e.dims().iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    /// Pointwise application to a section: `(δ∘ξ)(x) = δ_x(ξ(x))`.
    pub fn apply(&self, xi: &Section) -> Result<Section> {
        if xi.base_len() != self.maps.len() {
            return Err(Error::DimensionMismatch("morphism and section bases differ".into()));
        }
        let mut values = Vec::with_capacity(self.maps.len());
        for (x, m) in self.maps.iter().enumerate() {
            values.push(m.apply(xi.value(x))?);
        }
        Ok(Section { values })
    }

    pub fn compose(&self, other: &BundleMorphism) -> Result<BundleMorphism> {
        if self.maps.len() != other.maps.len() {
            return Err(Error::DimensionMismatch("morphism composition over different bases".into()));
        }
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<_>>()?;
        Ok(BundleMorphism { maps })
    }

    /// Pullback along α: the morphism `α*δ: α*E → α*F` with
    /// `(α*δ)_x = δ_{α(x)}`.
    pub fn pullback(&self, gpd: &FiniteGroupoid) -> BundleMorphism {
        BundleMorphism {
            maps: gpd.arrows().map(|g| self.maps[gpd.src(g).0].clone()).collect(),
        }
    }
}

/// A bundle automorphism presented as a pair `(F, b)`: a base bijection `b`
/// and invertible fibre maps `F_x: E_x → E_{b(x)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleAutomorphism {
    /// The covering base bijection, `base[x] = b(x)`.
    pub base: Vec<usize>,
    /// `maps[x]` is `F_x: E_x → E_{b(x)}`.
    pub maps: Vec<Matrix>,
}

impl BundleAutomorphism {
    pub fn new(bundle: &VectorBundle, base: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let n = bundle.base_len();
        if base.len() != n || maps.len() != n {
            return Err(Error::DimensionMismatch("automorphism tables have wrong length".into()));
        }
        if !is_permutation(&base) {
            return Err(Error::InvalidBisection("base map of automorphism is not a bijection".into()));
        }
        for (x, m) in maps.iter().enumerate() {
            if m.rows() != bundle.dim(base[x]) || m.cols() != bundle.dim(x) {
                return Err(Error::DimensionMismatch(format!(
                    "automorphism at point {x} must be {}×{}, got {}×{}",
                    bundle.dim(base[x]),
                    bundle.dim(x),
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_invertible() {
                return Err(Error::SingularMatrix(format!(
                    "automorphism fibre map at point {x} is singular"
                )));
            }
        }
        Ok(Self { base, maps })
    }

    pub fn identity(bundle: &VectorBundle) -> Self {
        Self {
            base: (0..bundle.base_len()).collect(),
            maps: bundle.dims().iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.base.iter().enumerate().all(|(x, &bx)| x == bx)
            && self.maps.iter().all(Matrix::is_identity)
    }

    /// Composition `self ∘ other` of bundle maps: base `b_self ∘ b_other`,
    /// fibre maps `F_{b_other(x)} · G_x`.
    pub fn compose(&self, other: &BundleAutomorphism) -> Result<BundleAutomorphism> {
        if self.base.len() != other.base.len() {
            return Err(Error::DimensionMismatch("automorphism composition over different bases".into()));
        }
        let base = other.base.iter().map(|&x| self.base[x]).collect();
        let maps = other
            .base
            .iter()
            .zip(&other.maps)
            .map(|(&bx, g)| self.maps[bx].mul(g))
            .collect::<Result<_>>()?;
        Ok(BundleAutomorphism { base, maps })
    }

    pub fn invert(&self) -> Result<BundleAutomorphism> {
        let n = self.base.len();
        let mut base = vec![0; n];
        let mut maps = vec![Matrix::zero(0, 0); n];
        for x in 0..n {
            base[self.base[x]] = x;
            maps[self.base[x]] = self.maps[x].inverse()?;
        }
        Ok(BundleAutomorphism { base, maps })
    }
}

pub(crate) fn is_permutation(map: &[usize]) -> bool {
    let n = map.len();
    let mut seen = vec![false; n];
    map.iter().all(|&x| {
        if x >= n || seen[x] {
            false
        } else {
            seen[x] = true;
            true
        }
    })
}

/// Inverse of a permutation given as a table.
pub(crate) fn invert_permutation(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = x;
    }
    inv
}
