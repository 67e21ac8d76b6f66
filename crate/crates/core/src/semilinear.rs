//! Semi-linear maps on section modules and the isomorphism chain
//! `Bis(Φ(E)) ≅ Aut(E) ≅ SL(Γ(E))`.
//!
//! A semi-linear map is carried by a bundle automorphism `(F, b)` and acts on
//! sections by `μ(ξ) = F∘ξ∘b⁻¹`; it satisfies `μ(f·ξ) = (f∘b⁻¹)·μ(ξ)` for
//! every scalar function `f`. Storing the carrier instead of a section-space
//! matrix keeps semi-linearity and locality checks fibrewise; abstract
//! section maps are converted once through [`nu_inverse`].
//!
//! On a finite base the algebra automorphisms of the function algebra are
//! exactly the base bijections, recovered here by support tracking on delta
//! sections.

use crate::bisections::Bisection;
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::linear::{
    invert_permutation, is_permutation, BundleAutomorphism, FrameArrow, Matrix, Section,
    VectorBundle,
};
use crate::selfmaps::SelfMap;

/// An element of `SL(Γ(E))`, stored as its carrier `(F, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiLinearMap {
    aut: BundleAutomorphism,
}

impl SemiLinearMap {
    pub fn identity(bundle: &VectorBundle) -> Self {
        Self {
            aut: BundleAutomorphism::identity(bundle),
        }
    }

    pub fn carrier(&self) -> &BundleAutomorphism {
        &self.aut
    }

    /// The base bijection of the carrier.
    pub fn base(&self) -> &[usize] {
        &self.aut.base
    }

    pub fn is_identity(&self) -> bool {
        self.aut.is_identity()
    }

    /// Applies `ξ ↦ F∘ξ∘b⁻¹`: the value at `m` is `F_{b⁻¹(m)}·ξ(b⁻¹(m))`.
    pub fn apply(&self, xi: &Section) -> Result<Section> {
        let inv = invert_permutation(&self.aut.base);
        let mut out = Vec::with_capacity(inv.len());
        for &p in &inv {
            out.push(self.aut.maps[p].apply(xi.value(p))?);
        }
        let mut res = xi.clone();
        for (m, v) in out.into_iter().enumerate() {
            res.set_value(m, v);
        }
        Ok(res)
    }

    pub fn compose(&self, other: &SemiLinearMap) -> Result<SemiLinearMap> {
        Ok(SemiLinearMap {
            aut: self.aut.compose(&other.aut)?,
        })
    }

    pub fn inverse(&self) -> Result<SemiLinearMap> {
        Ok(SemiLinearMap {
            aut: self.aut.invert()?,
        })
    }

    /// Materialises the map as a matrix on the delta-section basis.
    pub fn to_abstract(&self, bundle: &VectorBundle) -> Result<AbstractSectionMap> {
        AbstractSectionMap::from_action(bundle, |xi| self.apply(xi))
    }
}

/// The carrier-to-map isomorphism `ν: Aut(E) → SL(Γ(E))`,
/// `(F, b) ↦ (ξ ↦ F∘ξ∘b⁻¹)`.
pub fn nu(aut: BundleAutomorphism) -> SemiLinearMap {
    SemiLinearMap { aut }
}

/// A linear map on the section space, given as a matrix in the canonical
/// delta-section basis (point blocks in base order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractSectionMap {
    dims: Vec<usize>,
    matrix: Matrix,
}

impl AbstractSectionMap {
    pub fn new(bundle: &VectorBundle, matrix: Matrix) -> Result<Self> {
        let total = bundle.total_dim();
        if matrix.rows() != total || matrix.cols() != total {
            return Err(Error::DimensionMismatch(format!(
                "section-space matrix must be {total}×{total}, got {}×{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self {
            dims: bundle.dims().to_vec(),
            matrix,
        })
    }

    /// Builds the matrix of a linear action column by column on the delta
    /// basis.
    pub fn from_action(
        bundle: &VectorBundle,
        action: impl Fn(&Section) -> Result<Section>,
    ) -> Result<Self> {
        let total = bundle.total_dim();
        let mut matrix = Matrix::zero(total, total);
        for p in 0..bundle.base_len() {
            for c in 0..bundle.dim(p) {
                let col = bundle.offset(p) + c;
                let image = action(&Section::delta(bundle, p, c))?;
                for (row, v) in image.to_flat().into_iter().enumerate() {
                    matrix[(row, col)] = v;
                }
            }
        }
        Ok(Self {
            dims: bundle.dims().to_vec(),
            matrix,
        })
    }

    pub fn bundle(&self) -> VectorBundle {
        VectorBundle::new(self.dims.clone())
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, xi: &Section) -> Result<Section> {
        let flat = self.matrix.apply(&xi.to_flat())?;
        Section::from_flat(&self.bundle(), &flat)
    }
}

/// Tests whether an invertible section-space map is semi-linear, returning
/// the base bijection if so. The map must send sections supported at `m`
/// onto sections supported at a single point `b(m)`; zero-dimensional
/// fibres, being invisible to sections, are matched in base order.
pub fn is_semilinear(mu: &AbstractSectionMap) -> Option<Vec<usize>> {
    if !mu.matrix.is_invertible() {
        return None;
    }
    let bundle = mu.bundle();
    let n = bundle.base_len();
    let block_of_row = {
        let mut map = Vec::with_capacity(bundle.total_dim());
        for (p, &d) in bundle.dims().iter().enumerate() {
            map.extend(std::iter::repeat_n(p, d));
        }
        map
    };
    let mut base = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    for m in 0..n {
        if bundle.dim(m) == 0 {
            continue;
        }
        let mut target: Option<usize> = None;
        for c in 0..bundle.dim(m) {
            let col = bundle.offset(m) + c;
            for row in 0..bundle.total_dim() {
                if mu.matrix[(row, col)] == num_traits::Zero::zero() {
                    continue;
                }
                match target {
                    None => target = Some(block_of_row[row]),
                    Some(t) if t != block_of_row[row] => return None,
                    Some(_) => {}
                }
            }
        }
        let t = target?;
        if taken[t] || bundle.dim(t) != bundle.dim(m) {
            return None;
        }
        taken[t] = true;
        base[m] = t;
    }
    // Remaining sources are exactly the zero-dimensional fibres; pair them
    // with the untaken (necessarily zero-dimensional) targets in order.
    let free: Vec<usize> = (0..n).filter(|&t| !taken[t]).collect();
    let mut next = free.into_iter();
    for b in base.iter_mut() {
        if *b == usize::MAX {
            *b = next.next()?;
        }
    }
    if is_permutation(&base) {
        Some(base)
    } else {
        None
    }
}

/// Reconstructs the carrier from a semi-linear section map: the fibre map at
/// `m` is read off the values of delta sections at the point `b(m)`.
pub fn nu_inverse(mu: &AbstractSectionMap) -> Result<BundleAutomorphism> {
    let base = is_semilinear(mu).ok_or_else(|| {
        Error::NotSemilinear("section map does not track a base bijection".into())
    })?;
    let bundle = mu.bundle();
    let maps = (0..bundle.base_len())
        .map(|m| {
            let t = base[m];
            Matrix::from_fn(bundle.dim(t), bundle.dim(m), |i, j| {
                mu.matrix[(bundle.offset(t) + i, bundle.offset(m) + j)].clone()
            })
        })
        .collect();
    BundleAutomorphism::new(&bundle, base, maps)
        .map_err(|e| Error::NotSemilinear(format!("carrier extraction failed: {e}")))
}

/// A bisection of the virtual frame groupoid `Φ(E)`: for each base point `m`
/// an invertible map into the fibre at `m`, with bijective source map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameBisection {
    arrows: Vec<FrameArrow>,
}

impl FrameBisection {
    pub fn new(bundle: &VectorBundle, arrows: Vec<FrameArrow>) -> Result<Self> {
        if arrows.len() != bundle.base_len() {
            return Err(Error::InvalidBisection(format!(
                "frame bisection over {} points, bundle has {}",
                arrows.len(),
                bundle.base_len()
            )));
        }
        for (m, a) in arrows.iter().enumerate() {
            if a.tgt != m {
                return Err(Error::InvalidBisection(format!(
                    "β∘σ ≠ id: arrow at {m} targets {}",
                    a.tgt
                )));
            }
        }
        let base: Vec<usize> = arrows.iter().map(|a| a.src).collect();
        if !is_permutation(&base) {
            return Err(Error::InvalidBisection("α∘σ is not a bijection".into()));
        }
        Ok(Self { arrows })
    }

    pub fn unit(bundle: &VectorBundle) -> Self {
        Self {
            arrows: (0..bundle.base_len())
                .map(|m| FrameArrow::identity(bundle, m))
                .collect(),
        }
    }

    pub fn apply(&self, m: usize) -> &FrameArrow {
        &self.arrows[m]
    }

    /// The base map `α∘σ` as a table.
    pub fn base_map(&self) -> Vec<usize> {
        self.arrows.iter().map(|a| a.src).collect()
    }

    /// The frame-groupoid instance of the bisection product:
    /// `(σ1⋆σ2)(x) = σ1(x)∘σ2(α∘σ1(x))`.
    pub fn multiply(&self, other: &FrameBisection) -> Result<FrameBisection> {
        let arrows = self
            .arrows
            .iter()
            .map(|a| a.compose(other.apply(a.src)))
            .collect::<Result<_>>()?;
        Ok(FrameBisection { arrows })
    }

    pub fn invert(&self) -> Result<FrameBisection> {
        let inv_base = invert_permutation(&self.base_map());
        let arrows = inv_base
            .iter()
            .map(|&p| self.arrows[p].invert())
            .collect::<Result<_>>()?;
        Ok(FrameBisection { arrows })
    }
}

/// The isomorphism `B: Bis(Φ(E)) → Aut(E)`: the automorphism
/// `v ↦ σ((α∘σ)⁻¹(π(v)))·v`, covering `(α∘σ)⁻¹`.
pub fn bisection_to_bundle_aut(
    bundle: &VectorBundle,
    sigma: &FrameBisection,
) -> Result<BundleAutomorphism> {
    let a = sigma.base_map();
    let b = invert_permutation(&a);
    let maps = (0..bundle.base_len())
        .map(|x| sigma.apply(b[x]).matrix.clone())
        .collect();
    BundleAutomorphism::new(bundle, b, maps)
}

/// The inverse of `B`: `(F, b) ↦ (x ↦ F|_{E_{b⁻¹(x)}})`.
pub fn bundle_aut_to_bisection(bundle: &VectorBundle, aut: &BundleAutomorphism) -> FrameBisection {
    let inv = invert_permutation(&aut.base);
    let arrows = (0..bundle.base_len())
        .map(|x| FrameArrow {
            src: inv[x],
            tgt: x,
            matrix: aut.maps[inv[x]].clone(),
        })
        .collect();
    FrameBisection { arrows }
}

/// The composite isomorphism `γ = ν∘B: Bis(Φ(E)) → SL(Γ(E))`, acting by
/// `γ(σ)(ξ)(x) = σ(x)·ξ(α∘σ(x))`.
pub fn gamma_iso(bundle: &VectorBundle, sigma: &FrameBisection) -> Result<SemiLinearMap> {
    Ok(nu(bisection_to_bundle_aut(bundle, sigma)?))
}

/// Locality witness for a family of bisection-indexed semi-linear maps:
/// the first `(entry, object)` where a bisection fixes `m` through the
/// natural action (`σ(m) = 1_m`) but the value at `m` moves. Checked
/// exhaustively over the delta-section basis.
pub fn locality_violation_bis(
    gpd: &FiniteGroupoid,
    bundle: &VectorBundle,
    entries: &[(Bisection, SemiLinearMap)],
) -> Option<(usize, usize)> {
    for (i, (sigma, mu)) in entries.iter().enumerate() {
        for m in gpd.objects() {
            if sigma.apply(m) != gpd.unit(m) {
                continue;
            }
            for p in 0..bundle.base_len() {
                for c in 0..bundle.dim(p) {
                    let xi = Section::delta(bundle, p, c);
                    let image = mu.apply(&xi).expect("delta sections match the bundle");
                    if image.value(m.0) != xi.value(m.0) {
                        return Some((i, m.0));
                    }
                }
            }
        }
    }
    None
}

/// Locality of a bisection representation in the sense of the natural
/// action: `σ(m) = 1_m` forces `ρ(σ)ξ(m) = ξ(m)`.
pub fn is_local_bis(
    gpd: &FiniteGroupoid,
    bundle: &VectorBundle,
    entries: &[(Bisection, SemiLinearMap)],
) -> bool {
    locality_violation_bis(gpd, bundle, entries).is_none()
}

/// Locality witness for self-map representations on `Γ(α*E)`: the first
/// `(entry, arrow)` where `x·f(x) = x` but the value at `x` moves.
pub fn locality_violation_sg(
    gpd: &FiniteGroupoid,
    pull_bundle: &VectorBundle,
    entries: &[(SelfMap, SemiLinearMap)],
) -> Option<(usize, usize)> {
    for (i, (f, mu)) in entries.iter().enumerate() {
        for x in gpd.arrows() {
            if f.apply(x) != gpd.unit(gpd.src(x)) {
                continue;
            }
            for p in 0..pull_bundle.base_len() {
                for c in 0..pull_bundle.dim(p) {
                    let xi = Section::delta(pull_bundle, p, c);
                    let image = mu.apply(&xi).expect("delta sections match the bundle");
                    if image.value(x.0) != xi.value(x.0) {
                        return Some((i, x.0));
                    }
                }
            }
        }
    }
    None
}

pub fn is_local_sg(
    gpd: &FiniteGroupoid,
    pull_bundle: &VectorBundle,
    entries: &[(SelfMap, SemiLinearMap)],
) -> bool {
    locality_violation_sg(gpd, pull_bundle, entries).is_none()
}
