//! The monoid `S_G` of arrow self-maps and its unit group `S_G(α)`.
//!
//! `S_G = {f: G → G | β∘f = α}` under the star product
//! `(f⋆g)(x) = f(x)·g(x·f(x))`; the unit is `x ↦ 1_{α(x)}`. The map
//! `R_f(x) = x·f(x)` characterises the units: `f` is invertible exactly when
//! `R_f` is a bijection of the arrow set, and `R` is an anti-homomorphism,
//! `R_{f⋆g} = R_g ∘ R_f`.
//!
//! α-properness, a hypothesis of the smooth theory, holds automatically
//! here: every map between finite sets is proper.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groupoid::{ArrId, FiniteGroupoid};
use crate::linear::{invert_permutation, is_permutation};

/// An element of `S_G`, stored as the table `x ↦ f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SelfMap {
    f: Vec<ArrId>,
}

impl SelfMap {
    /// Wraps a table without validation; see [`is_valid`].
    pub fn from_table(f: Vec<ArrId>) -> Self {
        Self { f }
    }

    /// The unit `x ↦ 1_{α(x)}`; under `M ⊆ G` this is the source map.
    pub fn unit(gpd: &FiniteGroupoid) -> Self {
        Self {
            f: gpd.arrows().map(|x| gpd.unit(gpd.src(x))).collect(),
        }
    }

    pub fn apply(&self, x: ArrId) -> ArrId {
        self.f[x.0]
    }

    pub fn table(&self) -> &[ArrId] {
        &self.f
    }
}

/// Checks the defining condition `β∘f = α`.
pub fn is_valid(gpd: &FiniteGroupoid, f: &SelfMap) -> bool {
    f.f.len() == gpd.n_arrows() && gpd.arrows().all(|x| gpd.tgt(f.apply(x)) == gpd.src(x))
}

/// The star product `(f⋆g)(x) = f(x)·g(x·f(x))`.
pub fn star(gpd: &FiniteGroupoid, f: &SelfMap, g: &SelfMap) -> SelfMap {
    let table = gpd
        .arrows()
        .map(|x| {
            let fx = f.apply(x);
            let xf = gpd.compose_opt(x, fx).expect("R_f value is always composable");
            gpd.compose_opt(fx, g.apply(xf))
                .expect("star product is always composable")
        })
        .collect();
    SelfMap { f: table }
}

/// The table of `R_f(x) = x·f(x)`.
pub fn r_of(gpd: &FiniteGroupoid, f: &SelfMap) -> Vec<ArrId> {
    gpd.arrows()
        .map(|x| gpd.compose_opt(x, f.apply(x)).expect("R_f value is always composable"))
        .collect()
}

/// An element of `S_G` is a unit exactly when `R_f` is a bijection of `G`.
pub fn is_unit(gpd: &FiniteGroupoid, f: &SelfMap) -> bool {
    let r: Vec<usize> = r_of(gpd, f).iter().map(|a| a.0).collect();
    is_permutation(&r)
}

/// Constructive inverse `g(y) = ( f(R_f⁻¹(y)) )⁻¹`, verified post hoc
/// against the two-sided unit law.
pub fn invert(gpd: &FiniteGroupoid, f: &SelfMap) -> Result<SelfMap> {
    let r: Vec<usize> = r_of(gpd, f).iter().map(|a| a.0).collect();
    if !is_permutation(&r) {
        return Err(Error::NotInvertible(
            "R_f is not a bijection of the arrow set".into(),
        ));
    }
    let r_inv = invert_permutation(&r);
    let g = SelfMap {
        f: gpd
            .arrows()
            .map(|y| gpd.inverse(f.apply(ArrId(r_inv[y.0]))))
            .collect(),
    };
    let unit = SelfMap::unit(gpd);
    if star(gpd, f, &g) != unit || star(gpd, &g, f) != unit {
        return Err(Error::NotInvertible(
            "constructed inverse fails the unit law".into(),
        ));
    }
    Ok(g)
}

/// The enumerated unit group `S_G(α)` in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgUnitGroup {
    elements: Vec<SelfMap>,
}

impl SgUnitGroup {
    pub fn elements(&self) -> &[SelfMap] {
        &self.elements
    }

    pub fn index_of(&self, f: &SelfMap) -> Option<usize> {
        self.elements.binary_search(f).ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Size of the raw search space `Π_x |β⁻¹(α(x))|`, saturating.
pub fn search_space(gpd: &FiniteGroupoid) -> u128 {
    let fiber_sizes: Vec<u128> = gpd
        .objects()
        .map(|m| gpd.tgt_fiber(m).len() as u128)
        .collect();
    let mut space: u128 = 1;
    for x in gpd.arrows() {
        space = space.saturating_mul(fiber_sizes[gpd.src(x).0]);
    }
    space
}

/// Exhaustively enumerates `S_G(α)`: candidates assign to each arrow `x` a
/// value in `β⁻¹(α(x))`, pruned by injectivity of `R_f`. Guarded by `bound`
/// on the raw candidate count.
pub fn enumerate_units(gpd: &FiniteGroupoid, bound: u128) -> Result<SgUnitGroup> {
    crate::ensure_thread_pool();
    let space = search_space(gpd);
    if space > bound {
        return Err(Error::TooLarge { space, bound });
    }
    let n = gpd.n_arrows();
    if n == 0 {
        return Ok(SgUnitGroup {
            elements: vec![SelfMap { f: Vec::new() }],
        });
    }
    let candidates: Vec<Vec<ArrId>> = gpd
        .arrows()
        .map(|x| gpd.tgt_fiber(gpd.src(x)))
        .collect();

    fn backtrack(
        gpd: &FiniteGroupoid,
        candidates: &[Vec<ArrId>],
        depth: usize,
        f: &mut Vec<ArrId>,
        r_used: &mut Vec<bool>,
        out: &mut Vec<SelfMap>,
    ) {
        if depth == candidates.len() {
            out.push(SelfMap { f: f.clone() });
            return;
        }
        let x = ArrId(depth);
        for &fx in &candidates[depth] {
            let r = gpd.compose_opt(x, fx).expect("candidate is composable").0;
            if r_used[r] {
                continue;
            }
            r_used[r] = true;
            f.push(fx);
            backtrack(gpd, candidates, depth + 1, f, r_used, out);
            f.pop();
            r_used[r] = false;
        }
    }

    let mut elements: Vec<SelfMap> = candidates[0]
        .par_iter()
        .map(|&f0| {
            let mut out = Vec::new();
            let mut f = vec![f0];
            let mut r_used = vec![false; n];
            let r0 = gpd.compose_opt(ArrId(0), f0).expect("candidate is composable").0;
            r_used[r0] = true;
            backtrack(gpd, &candidates, 1, &mut f, &mut r_used, &mut out);
            out
        })
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    elements.sort();
    Ok(SgUnitGroup { elements })
}

/// The natural right action `γ(f, x) = x·f(x) = R_f(x)`.
pub fn gamma_action(gpd: &FiniteGroupoid, f: &SelfMap, x: ArrId) -> ArrId {
    gpd.compose_opt(x, f.apply(x)).expect("action product is always composable")
}
