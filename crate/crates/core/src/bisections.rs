//! The group of bisections `Bis(G)`.
//!
//! A bisection is a section `σ` of the target map with `α∘σ` a bijection of
//! the base. The group law is
//!
//! ```text
//! (σ1 ⋆ σ2)(x) = σ1(x) · σ2((α∘σ1)(x)),      σ⁻¹(x) = ( σ((α∘σ)⁻¹(x)) )⁻¹.
//! ```
//!
//! Enumeration backtracks over β-fibres while keeping `m ↦ α(σ(m))`
//! injective, which guarantees completeness and prunes early; results are
//! returned in a canonical sorted order.

use rayon::prelude::*;

use crate::groupoid::{ArrId, FiniteGroupoid, ObjId};
use crate::linear::invert_permutation;
use crate::selfmaps::SelfMap;

/// A bisection, stored as the table `m ↦ σ(m)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bisection {
    sigma: Vec<ArrId>,
}

impl Bisection {
    /// Wraps a table without validation; see [`is_valid`].
    pub fn from_table(sigma: Vec<ArrId>) -> Self {
        Self { sigma }
    }

    /// The unit section `m ↦ 1_m`.
    pub fn unit(gpd: &FiniteGroupoid) -> Self {
        Self {
            sigma: gpd.objects().map(|m| gpd.unit(m)).collect(),
        }
    }

    pub fn apply(&self, m: ObjId) -> ArrId {
        self.sigma[m.0]
    }

    pub fn table(&self) -> &[ArrId] {
        &self.sigma
    }

    /// The underlying base map `α∘σ` as a table.
    pub fn base_map(&self, gpd: &FiniteGroupoid) -> Vec<usize> {
        self.sigma.iter().map(|&g| gpd.src(g).0).collect()
    }
}

/// Checks the two defining conditions: `β∘σ = id` and `α∘σ` bijective.
pub fn is_valid(gpd: &FiniteGroupoid, sigma: &Bisection) -> bool {
    if sigma.sigma.len() != gpd.n_objects() {
        return false;
    }
    if !gpd.objects().all(|m| gpd.tgt(sigma.apply(m)) == m) {
        return false;
    }
    crate::linear::is_permutation(&sigma.base_map(gpd))
}

/// The product `σ1 ⋆ σ2`, pointwise `σ1(x)·σ2(α(σ1(x)))`.
pub fn multiply(gpd: &FiniteGroupoid, s1: &Bisection, s2: &Bisection) -> Bisection {
    let sigma = gpd
        .objects()
        .map(|m| {
            let g = s1.apply(m);
            let h = s2.apply(gpd.src(g));
            gpd.compose_opt(g, h)
                .expect("bisection product is always composable")
        })
        .collect();
    Bisection { sigma }
}

/// The inverse `σ⁻¹(x) = (σ((α∘σ)⁻¹(x)))⁻¹`.
pub fn invert(gpd: &FiniteGroupoid, s: &Bisection) -> Bisection {
    let inv_base = invert_permutation(&s.base_map(gpd));
    let sigma = gpd
        .objects()
        .map(|m| gpd.inverse(s.apply(ObjId(inv_base[m.0]))))
        .collect();
    Bisection { sigma }
}

/// Complete, duplicate-free enumeration of `Bis(G)` in canonical order.
pub fn enumerate(gpd: &FiniteGroupoid) -> Vec<Bisection> {
    crate::ensure_thread_pool();
    let n = gpd.n_objects();
    if n == 0 {
        return vec![Bisection { sigma: Vec::new() }];
    }
    let fibers: Vec<Vec<ArrId>> = gpd.objects().map(|m| gpd.tgt_fiber(m)).collect();

    fn backtrack(
        gpd: &FiniteGroupoid,
        fibers: &[Vec<ArrId>],
        depth: usize,
        sigma: &mut Vec<ArrId>,
        used_src: &mut Vec<bool>,
        out: &mut Vec<Bisection>,
    ) {
        if depth == fibers.len() {
            out.push(Bisection {
                sigma: sigma.clone(),
            });
            return;
        }
        for &g in &fibers[depth] {
            let s = gpd.src(g).0;
            if used_src[s] {
                continue;
            }
            used_src[s] = true;
            sigma.push(g);
            backtrack(gpd, fibers, depth + 1, sigma, used_src, out);
            sigma.pop();
            used_src[s] = false;
        }
    }

    let mut found: Vec<Bisection> = fibers[0]
        .par_iter()
        .map(|&g0| {
            let mut out = Vec::new();
            let mut sigma = vec![g0];
            let mut used_src = vec![false; n];
            used_src[gpd.src(g0).0] = true;
            backtrack(gpd, &fibers, 1, &mut sigma, &mut used_src, &mut out);
            out
        })
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    found.sort();
    found
}

/// The enumerated group together with one fixed witness bisection per arrow,
/// chosen deterministically (first in enumeration order).
#[derive(Debug, Clone)]
pub struct BisectionWitnesses {
    pub bisections: Vec<Bisection>,
    /// Per arrow `g`: index into `bisections` of a `σ` with `σ(β(g)) = g`.
    pub witness: Vec<Option<usize>>,
}

impl BisectionWitnesses {
    pub fn has_enough(&self) -> bool {
        self.witness.iter().all(Option::is_some)
    }

    pub fn witness_for(&self, g: ArrId) -> Option<&Bisection> {
        self.witness[g.0].map(|i| &self.bisections[i])
    }

    /// Every enumerated bisection through `g`, i.e. with `σ(β(g)) = g`.
    pub fn all_through<'a>(
        &'a self,
        gpd: &'a FiniteGroupoid,
        g: ArrId,
    ) -> impl Iterator<Item = &'a Bisection> {
        let m = gpd.tgt(g);
        self.bisections.iter().filter(move |s| s.apply(m) == g)
    }
}

/// Enumerates and records, for each arrow, the first bisection through it.
pub fn witnesses(gpd: &FiniteGroupoid) -> BisectionWitnesses {
    let bisections = enumerate(gpd);
    let witness = gpd
        .arrows()
        .map(|g| {
            let m = gpd.tgt(g);
            bisections.iter().position(|s| s.apply(m) == g)
        })
        .collect();
    BisectionWitnesses {
        bisections,
        witness,
    }
}

/// True iff every arrow lies in the image of some bisection at its target.
pub fn has_enough_bisections(gpd: &FiniteGroupoid) -> bool {
    witnesses(gpd).has_enough()
}

/// The embedding `Ψ: Bis(G) → S_G(α)`, `σ ↦ σ∘α`.
pub fn psi_embed(gpd: &FiniteGroupoid, s: &Bisection) -> SelfMap {
    SelfMap::from_table(gpd.arrows().map(|x| s.apply(gpd.src(x))).collect())
}

/// The natural right action `γ(σ, x) = x·σ(α(x))` of a bisection on arrows.
pub fn gamma_action(gpd: &FiniteGroupoid, s: &Bisection, x: ArrId) -> ArrId {
    gpd.compose_opt(x, s.apply(gpd.src(x)))
        .expect("action product is always composable")
}
