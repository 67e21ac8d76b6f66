//! Transfer of representations between a groupoid, its bisection group and
//! its self-map group.
//!
//! A groupoid representation `φ` assigns an invertible matrix
//! `φ(g): E_{α(g)} → E_{β(g)}` to every arrow, functorially. From `φ` we
//! induce
//!
//! * a representation of `Bis(G)` on `Γ(E)`:
//!   `ρ_φ(σ)(ξ)(m) = φ(σ(m))·ξ(α∘σ(m))`, and
//! * a representation of `S_G(α)` on `Γ(α*E)`:
//!   `ρ_{φ,S}(f)(ξ)(x) = φ(f(x))·ξ(R_f(x))`.
//!
//! Both land in semi-linear maps and are local. Conversely, a local
//! semi-linear homomorphism of `Bis(G)` determines `φ` by evaluating on
//! delta sections, `φ(g)h = (ρ(σ_g)ξ_h)(β(g))` for any bisection `σ_g`
//! through `g`; independence of that choice is verified, not assumed.
//! Representations are materialised as finite tables over the enumerated
//! groups; all equality checks are exact.

use crate::bisections::{self, Bisection};
use crate::error::{Error, Result, ValidationReport};
use crate::groupoid::{ArrId, FiniteGroupoid, ObjId};
use crate::linear::{
    invert_permutation, pullback_bundle, pullback_section, BundleAutomorphism, BundleMorphism,
    Matrix, Section, VectorBundle,
};
use crate::selfmaps::{self, SelfMap};
use crate::semilinear::{self, nu, AbstractSectionMap, SemiLinearMap};

/// A representation of the groupoid on a bundle over its objects: one
/// invertible matrix per arrow, `arrows[g]: E_{α(g)} → E_{β(g)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidRep {
    pub bundle: VectorBundle,
    pub arrows: Vec<Matrix>,
}

impl GroupoidRep {
    /// The trivial representation: identity at every arrow. Requires the
    /// fibre dimensions to be constant on connected components.
    pub fn trivial(gpd: &FiniteGroupoid, bundle: VectorBundle) -> Self {
        let arrows = gpd
            .arrows()
            .map(|g| Matrix::identity(bundle.dim(gpd.src(g).0)))
            .collect();
        Self { bundle, arrows }
    }

    pub fn matrix(&self, g: ArrId) -> &Matrix {
        &self.arrows[g.0]
    }
}

/// Exhaustively checks the functor laws of a groupoid representation.
pub fn validate_rep(gpd: &FiniteGroupoid, rep: &GroupoidRep) -> ValidationReport {
    let mut report = ValidationReport::new();
    if rep.bundle.base_len() != gpd.n_objects() {
        report.push(
            "base",
            vec![],
            format!(
                "bundle over {} points, groupoid has {} objects",
                rep.bundle.base_len(),
                gpd.n_objects()
            ),
        );
        return report;
    }
    if rep.arrows.len() != gpd.n_arrows() {
        report.push(
            "arrows",
            vec![],
            format!(
                "{} matrices for {} arrows",
                rep.arrows.len(),
                gpd.n_arrows()
            ),
        );
        return report;
    }
    for g in gpd.arrows() {
        let m = rep.matrix(g);
        let (rows, cols) = (rep.bundle.dim(gpd.tgt(g).0), rep.bundle.dim(gpd.src(g).0));
        if m.rows() != rows || m.cols() != cols {
            report.push(
                "shape",
                vec![g.to_string()],
                format!("matrix at {g} must be {rows}×{cols}, got {}×{}", m.rows(), m.cols()),
            );
        } else if !m.is_invertible() {
            report.push(
                "invertibility",
                vec![g.to_string()],
                format!("matrix at {g} is singular"),
            );
        }
    }
    if !report.is_empty() {
        return report;
    }
    for m in gpd.objects() {
        if !rep.matrix(gpd.unit(m)).is_identity() {
            report.push(
                "unit",
                vec![m.to_string()],
                format!("φ(1_{m}) is not the identity"),
            );
        }
    }
    for g in gpd.arrows() {
        for h in gpd.arrows() {
            let Some(gh) = gpd.compose_opt(g, h) else { continue };
            let prod = rep.matrix(g).mul(rep.matrix(h)).expect("shapes checked above");
            if &prod != rep.matrix(gh) {
                report.push(
                    "homomorphism",
                    vec![g.to_string(), h.to_string()],
                    format!("φ({g}·{h}) ≠ φ({g})·φ({h})"),
                );
            }
        }
        let gi = gpd.inverse(g);
        let inv = rep.matrix(g).inverse().expect("invertibility checked above");
        if &inv != rep.matrix(gi) {
            report.push(
                "inverse",
                vec![g.to_string()],
                format!("φ({g}⁻¹) ≠ φ({g})⁻¹"),
            );
        }
    }
    report
}

/// A representation of `Bis(G)` as a finite table of semi-linear maps on
/// `Γ(E)`, sorted canonically by bisection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisRep {
    pub bundle: VectorBundle,
    entries: Vec<(Bisection, SemiLinearMap)>,
}

impl BisRep {
    pub fn new(bundle: VectorBundle, mut entries: Vec<(Bisection, SemiLinearMap)>) -> Self {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        Self { bundle, entries }
    }

    pub fn entries(&self) -> &[(Bisection, SemiLinearMap)] {
        &self.entries
    }

    pub fn get(&self, sigma: &Bisection) -> Option<&SemiLinearMap> {
        self.entries
            .binary_search_by(|(s, _)| s.cmp(sigma))
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

/// A representation of `S_G(α)` as a finite table of semi-linear maps on
/// `Γ(α*E)`, sorted canonically by self-map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgRep {
    /// The pullback bundle `α*E` over the arrow set.
    pub bundle: VectorBundle,
    entries: Vec<(SelfMap, SemiLinearMap)>,
}

impl SgRep {
    pub fn new(bundle: VectorBundle, mut entries: Vec<(SelfMap, SemiLinearMap)>) -> Self {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        Self { bundle, entries }
    }

    pub fn entries(&self) -> &[(SelfMap, SemiLinearMap)] {
        &self.entries
    }

    pub fn get(&self, f: &SelfMap) -> Option<&SemiLinearMap> {
        self.entries
            .binary_search_by(|(g, _)| g.cmp(f))
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

/// On-demand evaluator for the induced `Bis(G)`-action of a single
/// bisection: the semi-linear map with carrier `b = (α∘σ)⁻¹` and
/// `F_x = φ(σ(b(x)))`.
pub fn induce_bis_map(gpd: &FiniteGroupoid, rep: &GroupoidRep, sigma: &Bisection) -> SemiLinearMap {
    let base = invert_permutation(&sigma.base_map(gpd));
    let maps = (0..gpd.n_objects())
        .map(|x| rep.matrix(sigma.apply(ObjId(base[x]))).clone())
        .collect();
    nu(BundleAutomorphism {
        base,
        maps,
    })
}

/// Induces the full `Bis(G)`-representation table from a groupoid
/// representation.
pub fn induce_bis_rep(gpd: &FiniteGroupoid, rep: &GroupoidRep) -> Result<BisRep> {
    let report = validate_rep(gpd, rep);
    if !report.is_empty() {
        return Err(Error::InvalidRep(report));
    }
    let entries = bisections::enumerate(gpd)
        .into_iter()
        .map(|s| {
            let mu = induce_bis_map(gpd, rep, &s);
            (s, mu)
        })
        .collect();
    Ok(BisRep::new(rep.bundle.clone(), entries))
}

fn check_bis_homomorphism(gpd: &FiniteGroupoid, rep: &BisRep) -> Result<()> {
    let expected = bisections::enumerate(gpd);
    if rep.entries.len() != expected.len()
        || rep.entries.iter().map(|(s, _)| s).ne(expected.iter())
    {
        return Err(Error::NotHomomorphism(
            "table is not indexed by exactly the bisection group".into(),
        ));
    }
    let unit = Bisection::unit(gpd);
    match rep.get(&unit) {
        Some(mu) if mu.is_identity() => {}
        _ => return Err(Error::NotHomomorphism("ρ(unit) is not the identity".into())),
    }
    for (s1, m1) in &rep.entries {
        for (s2, m2) in &rep.entries {
            let prod = bisections::multiply(gpd, s1, s2);
            let lhs = rep
                .get(&prod)
                .ok_or_else(|| Error::NotHomomorphism("table not closed under ⋆".into()))?;
            if *lhs != m1.compose(m2)? {
                return Err(Error::NotHomomorphism(format!(
                    "ρ(σ1⋆σ2) ≠ ρ(σ1)∘ρ(σ2) for σ1 = {:?}, σ2 = {:?}",
                    s1.table(),
                    s2.table()
                )));
            }
        }
    }
    Ok(())
}

/// Recovers the groupoid representation from a local semi-linear
/// representation of `Bis(G)`: `φ(g)h = (ρ(σ_g)ξ_h)(β(g))`, evaluated over
/// delta sections. The value is re-derived from every bisection through `g`
/// and the alternative evaluation point `ρ(σ_g)_M·α(g)` is verified to be
/// `β(g)`.
pub fn recover_groupoid_rep(gpd: &FiniteGroupoid, rep: &BisRep) -> Result<GroupoidRep> {
    let witnesses = bisections::witnesses(gpd);
    if !witnesses.has_enough() {
        let orphan = witnesses.witness.iter().position(Option::is_none).unwrap();
        return Err(Error::NotEnoughBisections(format!(
            "no bisection passes through arrow g{orphan}"
        )));
    }
    check_bis_homomorphism(gpd, rep)?;
    if let Some((entry, m)) = semilinear::locality_violation_bis(gpd, &rep.bundle, &rep.entries) {
        return Err(Error::NotLocal(format!(
            "entry {entry} fixes object o{m} but moves section values there"
        )));
    }

    let bundle = &rep.bundle;
    let mut arrows = Vec::with_capacity(gpd.n_arrows());
    for g in gpd.arrows() {
        let (src, tgt) = (gpd.src(g).0, gpd.tgt(g).0);
        let mut chosen: Option<Matrix> = None;
        for sigma in witnesses.all_through(gpd, g) {
            let mu = rep.get(sigma).expect("totality checked above");
            // Eq-form check: the carrier bijection must send α(g) to β(g).
            if mu.base()[src] != tgt {
                return Err(Error::ChoiceDependent(format!(
                    "carrier of ρ(σ_{g}) sends o{src} to o{}, expected o{tgt}",
                    mu.base()[src]
                )));
            }
            // Value form: columns are (ρ(σ_g)ξ_h)(β(g)) over delta sections ξ_h.
            let mut value_form = Matrix::zero(bundle.dim(tgt), bundle.dim(src));
            for j in 0..bundle.dim(src) {
                let xi = Section::delta(bundle, src, j);
                let image = mu.apply(&xi)?;
                for (i, v) in image.value(tgt).iter().enumerate() {
                    value_form[(i, j)] = v.clone();
                }
            }
            if value_form != mu.carrier().maps[src] {
                return Err(Error::ChoiceDependent(format!(
                    "evaluation at β({g}) disagrees with the carrier block at α({g})"
                )));
            }
            match &chosen {
                None => chosen = Some(value_form),
                Some(prev) if *prev != value_form => {
                    return Err(Error::ChoiceDependent(format!(
                        "two bisections through {g} yield different φ({g})"
                    )));
                }
                Some(_) => {}
            }
        }
        arrows.push(chosen.expect("enough bisections checked above"));
    }
    let recovered = GroupoidRep {
        bundle: rep.bundle.clone(),
        arrows,
    };
    let report = validate_rep(gpd, &recovered);
    if !report.is_empty() {
        return Err(Error::ChoiceDependent(format!(
            "recovered map is not a groupoid representation: {}",
            report.summary()
        )));
    }
    Ok(recovered)
}

/// On-demand evaluator for the induced `S_G(α)`-action of a single unit:
/// the semi-linear map on `Γ(α*E)` with carrier `b = R_f⁻¹` and
/// `F_y = φ(f(b(y)))`.
pub fn induce_sg_map(gpd: &FiniteGroupoid, rep: &GroupoidRep, f: &SelfMap) -> SemiLinearMap {
    let r: Vec<usize> = selfmaps::r_of(gpd, f).iter().map(|a| a.0).collect();
    let base = invert_permutation(&r);
    let maps = (0..gpd.n_arrows())
        .map(|y| rep.matrix(f.apply(ArrId(base[y]))).clone())
        .collect();
    nu(BundleAutomorphism { base, maps })
}

/// Induces the full `S_G(α)`-representation table on the pullback bundle.
pub fn induce_sg_rep(gpd: &FiniteGroupoid, rep: &GroupoidRep, bound: u128) -> Result<SgRep> {
    let report = validate_rep(gpd, rep);
    if !report.is_empty() {
        return Err(Error::InvalidRep(report));
    }
    let units = selfmaps::enumerate_units(gpd, bound)?;
    let pull = pullback_bundle(gpd, &rep.bundle);
    let entries = units
        .elements()
        .iter()
        .map(|f| (f.clone(), induce_sg_map(gpd, rep, f)))
        .collect();
    Ok(SgRep::new(pull, entries))
}

fn check_sg_homomorphism(gpd: &FiniteGroupoid, rep: &SgRep) -> Result<()> {
    let unit = SelfMap::unit(gpd);
    match rep.get(&unit) {
        Some(mu) if mu.is_identity() => {}
        _ => return Err(Error::NotHomomorphism("ρ_S(unit) is not the identity".into())),
    }
    for (f1, m1) in &rep.entries {
        for (f2, m2) in &rep.entries {
            let prod = selfmaps::star(gpd, f1, f2);
            let lhs = rep
                .get(&prod)
                .ok_or_else(|| Error::NotHomomorphism("table not closed under ⋆".into()))?;
            if *lhs != m1.compose(m2)? {
                return Err(Error::NotHomomorphism(
                    "ρ_S(f⋆g) ≠ ρ_S(f)∘ρ_S(g)".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Restricts an `S_G(α)`-representation along `Ψ` to a `Bis(G)`-
/// representation on `Γ(E)`: `(ρ_B(σ)ξ)(α(x)) = (ρ_S(Ψ(σ))ψξ)(x)`.
/// Well-definedness — constancy of the right-hand side on α-fibres — is
/// verified pointwise, as is semi-linearity of the result.
pub fn restrict_to_bis(gpd: &FiniteGroupoid, rep: &SgRep, e: &VectorBundle) -> Result<BisRep> {
    if pullback_bundle(gpd, e) != rep.bundle {
        return Err(Error::DimensionMismatch(
            "representation bundle is not the pullback of the given bundle".into(),
        ));
    }
    let mut entries = Vec::new();
    for sigma in bisections::enumerate(gpd) {
        let f = bisections::psi_embed(gpd, &sigma);
        let mu_hat = rep.get(&f).ok_or_else(|| {
            Error::NotHomomorphism("table is not defined on Ψ(Bis(G))".into())
        })?;
        let abstract_map = AbstractSectionMap::from_action(e, |xi| {
            let image = mu_hat.apply(&pullback_section(gpd, xi))?;
            let mut values = Vec::with_capacity(gpd.n_objects());
            for m in gpd.objects() {
                let fiber = gpd.src_fiber(m);
                let first = image.value(fiber[0].0).to_vec();
                for &x in &fiber[1..] {
                    if image.value(x.0) != first.as_slice() {
                        return Err(Error::NotConstantOnFibers(format!(
                            "value of ρ_S(Ψ(σ))ψξ differs between arrows {} and {x} over o{m}",
                            fiber[0]
                        )));
                    }
                }
                values.push(first);
            }
            Section::new(e, values)
        })?;
        let aut = semilinear::nu_inverse(&abstract_map)?;
        entries.push((sigma, nu(aut)));
    }
    Ok(BisRep::new(e.clone(), entries))
}

/// Result of [`recover_from_sg_rep`]: the recovered groupoid representation
/// plus an informational flag recording whether the induced table agrees
/// with the input on all of `G` (agreement is only asserted on `M`).
#[derive(Debug, Clone)]
pub struct RecoveredFromSg {
    pub rep: GroupoidRep,
    pub full_agreement: bool,
}

/// Recovers a groupoid representation from a local semi-linear
/// representation of `S_G(α)`: `φ(g)h = (ρ_S(Ψ(σ_g))ψξ_h)(1_{β(g)})`. The
/// induced table `ρ_{φ,S}` is then checked to agree with the input at every
/// unit arrow, for every table element and delta section.
pub fn recover_from_sg_rep(
    gpd: &FiniteGroupoid,
    rep: &SgRep,
    e: &VectorBundle,
) -> Result<RecoveredFromSg> {
    if pullback_bundle(gpd, e) != rep.bundle {
        return Err(Error::DimensionMismatch(
            "representation bundle is not the pullback of the given bundle".into(),
        ));
    }
    let witnesses = bisections::witnesses(gpd);
    if !witnesses.has_enough() {
        let orphan = witnesses.witness.iter().position(Option::is_none).unwrap();
        return Err(Error::NotEnoughBisections(format!(
            "no bisection passes through arrow g{orphan}"
        )));
    }
    check_sg_homomorphism(gpd, rep)?;
    if let Some((entry, x)) = semilinear::locality_violation_sg(gpd, &rep.bundle, &rep.entries) {
        return Err(Error::NotLocal(format!(
            "entry {entry} fixes arrow g{x} but moves section values there"
        )));
    }

    let mut arrows = Vec::with_capacity(gpd.n_arrows());
    for g in gpd.arrows() {
        let sigma = witnesses.witness_for(g).expect("enough bisections checked above");
        let f_g = bisections::psi_embed(gpd, sigma);
        let mu_hat = rep.get(&f_g).ok_or_else(|| {
            Error::NotHomomorphism("table is not defined on Ψ(Bis(G))".into())
        })?;
        let (src, tgt) = (gpd.src(g).0, gpd.tgt(g).0);
        let unit_tgt = gpd.unit(gpd.tgt(g)).0;
        let mut mat = Matrix::zero(e.dim(tgt), e.dim(src));
        for j in 0..e.dim(src) {
            let xi = Section::delta(e, src, j);
            let image = mu_hat.apply(&pullback_section(gpd, &xi))?;
            for (i, v) in image.value(unit_tgt).iter().enumerate() {
                mat[(i, j)] = v.clone();
            }
        }
        arrows.push(mat);
    }
    let recovered = GroupoidRep {
        bundle: e.clone(),
        arrows,
    };
    let report = validate_rep(gpd, &recovered);
    if !report.is_empty() {
        return Err(Error::AgreementFailure(format!(
            "recovered map is not a groupoid representation: {}",
            report.summary()
        )));
    }

    // Agreement of ρ_{φ,S} with the input: asserted at every unit arrow,
    // reported (never asserted) on the rest of G.
    let mut full_agreement = true;
    for (f, mu_hat) in &rep.entries {
        let induced = induce_sg_map(gpd, &recovered, f);
        for p in 0..rep.bundle.base_len() {
            for c in 0..rep.bundle.dim(p) {
                let xi = Section::delta(&rep.bundle, p, c);
                let lhs = induced.apply(&xi)?;
                let rhs = mu_hat.apply(&xi)?;
                for m in gpd.objects() {
                    let u = gpd.unit(m).0;
                    if lhs.value(u) != rhs.value(u) {
                        return Err(Error::AgreementFailure(format!(
                            "ρ_(φ,S)(f)ξ ≠ ρ_S(f)ξ at unit arrow of o{m}"
                        )));
                    }
                }
                if lhs != rhs {
                    full_agreement = false;
                }
            }
        }
    }
    Ok(RecoveredFromSg {
        rep: recovered,
        full_agreement,
    })
}

/// A morphism of groupoid representations: a base-preserving bundle
/// morphism, equivariant for the two linear actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMorphism {
    pub delta: BundleMorphism,
}

/// Validates equivariance `δ_{β(g)}·φ1(g) = φ2(g)·δ_{α(g)}` for all arrows.
pub fn validate_morphism(
    gpd: &FiniteGroupoid,
    rep1: &GroupoidRep,
    rep2: &GroupoidRep,
    delta: &BundleMorphism,
) -> Result<RepMorphism> {
    if delta.maps.len() != gpd.n_objects() {
        return Err(Error::DimensionMismatch(
            "morphism is not indexed by the objects".into(),
        ));
    }
    for g in gpd.arrows() {
        let (src, tgt) = (gpd.src(g).0, gpd.tgt(g).0);
        let lhs = delta.maps[tgt].mul(rep1.matrix(g))?;
        let rhs = rep2.matrix(g).mul(&delta.maps[src])?;
        if lhs != rhs {
            return Err(Error::NotEquivariant(format!(
                "δ∘φ1({g}) ≠ φ2({g})∘δ"
            )));
        }
    }
    Ok(RepMorphism {
        delta: delta.clone(),
    })
}

/// Transfers an intertwiner to the induced representations: the section map
/// `X ↦ δ∘X` on `Γ(E)` and `Y ↦ (α*δ)∘Y` on `Γ(α*E)`.
pub fn morphism_transfer(
    gpd: &FiniteGroupoid,
    rep1: &GroupoidRep,
    rep2: &GroupoidRep,
    delta: &BundleMorphism,
) -> Result<(BundleMorphism, BundleMorphism)> {
    let morphism = validate_morphism(gpd, rep1, rep2, delta)?;
    let pulled = morphism.delta.pullback(gpd);
    Ok((morphism.delta, pulled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::GroupTable;
    use crate::linear::rat;

    const BOUND: u128 = 1 << 20;

    fn p2() -> FiniteGroupoid {
        FiniteGroupoid::pair(2)
    }

    fn m1(p: i64, q: i64) -> Matrix {
        Matrix::from_rows(vec![vec![rat(p, q)]]).unwrap()
    }

    /// Fixture R: P2 acting on the line bundle with φ((a,b)) = [2].
    fn fixture_r() -> GroupoidRep {
        GroupoidRep {
            bundle: VectorBundle::constant(2, 1),
            // arrow order: (a,a), (a,b), (b,a), (b,b)
            arrows: vec![m1(1, 1), m1(2, 1), m1(1, 2), m1(1, 1)],
        }
    }

    fn swap_bisection() -> Bisection {
        Bisection::from_table(vec![ArrId(1), ArrId(2)])
    }

    fn gb2() -> FiniteGroupoid {
        FiniteGroupoid::group_bundle(&GroupTable::cyclic(2), 2).unwrap()
    }

    /// Homomorphism into SL(Γ(E)) over GB2 that scales ξ(b) by −1 whenever
    /// σ(a) = s. It is semi-linear but not local: σ = (s, e) fixes b yet
    /// moves section values there.
    fn gb2_nonlocal_rep() -> BisRep {
        let gpd = gb2();
        let e = VectorBundle::constant(2, 1);
        let entries = bisections::enumerate(&gpd)
            .into_iter()
            .map(|s| {
                let sign = if s.apply(ObjId(0)) == ArrId(1) { -1 } else { 1 };
                let aut = BundleAutomorphism::new(
                    &e,
                    vec![0, 1],
                    vec![m1(1, 1), m1(sign, 1)],
                )
                .unwrap();
                (s, nu(aut))
            })
            .collect();
        BisRep::new(e, entries)
    }

    #[test]
    fn validation_of_fixture_r() {
        let g = p2();
        assert!(validate_rep(&g, &fixture_r()).is_empty());
        let mut bad = fixture_r();
        bad.arrows[2] = m1(1, 1);
        let report = validate_rep(&g, &bad);
        assert!(report.violations.iter().any(|v| v.law == "homomorphism"));
        let trivial = GroupoidRep::trivial(&g, VectorBundle::constant(2, 3));
        assert!(validate_rep(&g, &trivial).is_empty());
    }

    #[test]
    fn induced_bis_rep_matches_formula() {
        let g = p2();
        let rep = fixture_r();
        let table = induce_bis_rep(&g, &rep).unwrap();
        let mu = table.get(&swap_bisection()).unwrap();
        let xi = Section::new(&rep.bundle, vec![vec![rat(1, 1)], vec![rat(3, 1)]]).unwrap();
        let out = mu.apply(&xi).unwrap();
        // ρ(σ_swap)(ξ) = (2·ξ(b), ξ(a)/2)
        assert_eq!(out.value(0), &[rat(6, 1)]);
        assert_eq!(out.value(1), &[rat(1, 2)]);
        assert!(table.get(&Bisection::unit(&g)).unwrap().is_identity());
        assert!(mu.compose(mu).unwrap().is_identity());
        // table and on-demand evaluator agree
        for (s, stored) in table.entries() {
            assert_eq!(*stored, induce_bis_map(&g, &rep, s));
        }
    }

    #[test]
    fn induced_rep_is_local_and_semilinear() {
        let g = p2();
        let rep = fixture_r();
        let table = induce_bis_rep(&g, &rep).unwrap();
        assert!(semilinear::is_local_bis(&g, &table.bundle, table.entries()));
        for (s, mu) in table.entries() {
            // carrier base is (α∘σ)⁻¹
            let base = s.base_map(&g);
            assert_eq!(mu.base(), invert_permutation(&base).as_slice());
        }
        // The abstract matrix of ρ(σ_swap) tracks the base swap, and its
        // carrier has F_b = [2]: E_b → E_a.
        let mu = table.get(&swap_bisection()).unwrap();
        let abstract_map = mu.to_abstract(&rep.bundle).unwrap();
        assert_eq!(semilinear::is_semilinear(&abstract_map), Some(vec![1, 0]));
        let carrier = semilinear::nu_inverse(&abstract_map).unwrap();
        assert_eq!(carrier.base, vec![1, 0]);
        assert_eq!(carrier.maps[1], m1(2, 1));
        assert_eq!(&carrier, mu.carrier());
    }

    #[test]
    fn recover_round_trips_fixture_r() {
        let g = p2();
        let rep = fixture_r();
        let table = induce_bis_rep(&g, &rep).unwrap();
        let recovered = recover_groupoid_rep(&g, &table).unwrap();
        assert_eq!(recovered, rep);
        // φ((a,b)) = [2] exactly
        assert_eq!(recovered.matrix(ArrId(1)), &m1(2, 1));
        let reinduced = induce_bis_rep(&g, &recovered).unwrap();
        assert_eq!(reinduced, table);
    }

    #[test]
    fn identity_rep_on_gb2_recovers_trivial() {
        let gpd = gb2();
        let e = VectorBundle::constant(2, 1);
        let entries = bisections::enumerate(&gpd)
            .into_iter()
            .map(|s| (s, SemiLinearMap::identity(&e)))
            .collect();
        let table = BisRep::new(e.clone(), entries);
        assert!(semilinear::is_local_bis(&gpd, &e, table.entries()));
        let recovered = recover_groupoid_rep(&gpd, &table).unwrap();
        assert_eq!(recovered, GroupoidRep::trivial(&gpd, e));
    }

    #[test]
    fn nonlocal_rep_is_rejected() {
        let gpd = gb2();
        let table = gb2_nonlocal_rep();
        // it is a genuine homomorphism ...
        check_bis_homomorphism(&gpd, &table).unwrap();
        // ... but not local, and recovery refuses it
        assert!(!semilinear::is_local_bis(&gpd, &table.bundle, table.entries()));
        assert!(matches!(
            recover_groupoid_rep(&gpd, &table),
            Err(Error::NotLocal(_))
        ));
    }

    #[test]
    fn induced_sg_rep_matches_formula() {
        let g = p2();
        let rep = fixture_r();
        let table = induce_sg_rep(&g, &rep, BOUND).unwrap();
        let f = bisections::psi_embed(&g, &swap_bisection());
        let mu = table.get(&f).unwrap();
        // ρ(f)(ξ)((a,a)) = φ((a,b))·ξ((a,b))
        let xi = Section::delta(&table.bundle, 1, 0);
        let out = mu.apply(&xi).unwrap();
        assert_eq!(out.value(0), &[rat(2, 1)]);
        assert!(table.get(&SelfMap::unit(&g)).unwrap().is_identity());
        assert!(semilinear::is_local_sg(&g, &table.bundle, table.entries()));
        check_sg_homomorphism(&g, &table).unwrap();
        // semi-linear with base bijection R_f: carrier base is R_f⁻¹
        for (f, mu) in table.entries() {
            let r: Vec<usize> = selfmaps::r_of(&g, f).iter().map(|a| a.0).collect();
            assert_eq!(mu.base(), invert_permutation(&r).as_slice());
        }
    }

    #[test]
    fn restriction_agrees_with_direct_induction() {
        let g = p2();
        let rep = fixture_r();
        let sg = induce_sg_rep(&g, &rep, BOUND).unwrap();
        let restricted = restrict_to_bis(&g, &sg, &rep.bundle).unwrap();
        let direct = induce_bis_rep(&g, &rep).unwrap();
        assert_eq!(restricted, direct);
    }

    #[test]
    fn identity_sg_rep_restricts_to_identity() {
        let gpd = gb2();
        let e = VectorBundle::constant(2, 1);
        let rep = GroupoidRep::trivial(&gpd, e.clone());
        let pull = pullback_bundle(&gpd, &e);
        let units = selfmaps::enumerate_units(&gpd, BOUND).unwrap();
        let table = SgRep::new(
            pull,
            units
                .elements()
                .iter()
                .map(|f| (f.clone(), SemiLinearMap::identity(&pullback_bundle(&gpd, &e))))
                .collect(),
        );
        let restricted = restrict_to_bis(&gpd, &table, &e).unwrap();
        for (_, mu) in restricted.entries() {
            assert!(mu.is_identity());
        }
        let _ = rep;
    }

    #[test]
    fn sg_recovery_round_trips() {
        let g = p2();
        let rep = fixture_r();
        let sg = induce_sg_rep(&g, &rep, BOUND).unwrap();
        let out = recover_from_sg_rep(&g, &sg, &rep.bundle).unwrap();
        assert_eq!(out.rep, rep);
        // induced tables agree everywhere, not only on M
        assert!(out.full_agreement);

        let gpd = gb2();
        let e = VectorBundle::constant(2, 1);
        let trivial = GroupoidRep::trivial(&gpd, e.clone());
        let sg = induce_sg_rep(&gpd, &trivial, BOUND).unwrap();
        let out = recover_from_sg_rep(&gpd, &sg, &e).unwrap();
        assert_eq!(out.rep, trivial);
    }

    #[test]
    fn restriction_rejects_fiber_inconstancy() {
        // A table whose value on Ψ(σ_swap) scales the two arrows over the
        // same source fibre differently: the restriction formula is not
        // well defined there.
        let g = p2();
        let e = VectorBundle::constant(2, 1);
        let pull = pullback_bundle(&g, &e);
        let units = selfmaps::enumerate_units(&g, BOUND).unwrap();
        let entries = units
            .elements()
            .iter()
            .map(|f| {
                let mu = if *f == SelfMap::unit(&g) {
                    SemiLinearMap::identity(&pull)
                } else {
                    nu(BundleAutomorphism::new(
                        &pull,
                        vec![0, 1, 2, 3],
                        vec![m1(1, 1), m1(2, 1), m1(3, 1), m1(1, 1)],
                    )
                    .unwrap())
                };
                (f.clone(), mu)
            })
            .collect();
        let table = SgRep::new(pull, entries);
        assert!(matches!(
            restrict_to_bis(&g, &table, &e),
            Err(Error::NotConstantOnFibers(_))
        ));
    }

    #[test]
    fn sg_recovery_rejects_nonlocal_tables() {
        // GB2 analogue of the non-local bisection representation: scale the
        // fibre-b arrows by −1 whenever f acts by s on the fibre over a.
        let gpd = gb2();
        let e = VectorBundle::constant(2, 1);
        let pull = pullback_bundle(&gpd, &e);
        let units = selfmaps::enumerate_units(&gpd, BOUND).unwrap();
        let entries = units
            .elements()
            .iter()
            .map(|f| {
                let sign = if f.apply(ArrId(0)) == ArrId(1) { -1 } else { 1 };
                let mu = nu(BundleAutomorphism::new(
                    &pull,
                    vec![0, 1, 2, 3],
                    vec![m1(1, 1), m1(1, 1), m1(sign, 1), m1(sign, 1)],
                )
                .unwrap());
                (f.clone(), mu)
            })
            .collect();
        let table = SgRep::new(pull.clone(), entries);
        check_sg_homomorphism(&gpd, &table).unwrap();
        assert!(!semilinear::is_local_sg(&gpd, &pull, table.entries()));
        assert!(matches!(
            recover_from_sg_rep(&gpd, &table, &e),
            Err(Error::NotLocal(_))
        ));
    }

    #[test]
    fn morphism_transfer_examples() {
        let g = p2();
        let rep = fixture_r();
        let e = rep.bundle.clone();
        let id = BundleMorphism::identity(&e);
        let (bis_side, sg_side) = morphism_transfer(&g, &rep, &rep, &id).unwrap();
        assert_eq!(bis_side, id);
        assert_eq!(sg_side.maps.len(), g.n_arrows());

        // scalar intertwiner δ = 3·id between φ and φ
        let three = BundleMorphism::new(&e, &e, vec![m1(3, 1), m1(3, 1)]).unwrap();
        let (bis_side, _) = morphism_transfer(&g, &rep, &rep, &three).unwrap();
        let xi = Section::new(&e, vec![vec![rat(1, 1)], vec![rat(3, 1)]]).unwrap();
        assert_eq!(bis_side.apply(&xi).unwrap(), xi.scale(&rat(3, 1)));
        assert_ne!(bis_side, id);

        // equivariance for the induced actions
        let table = induce_bis_rep(&g, &rep).unwrap();
        for (_, mu) in table.entries() {
            for p in 0..2 {
                let xi = Section::delta(&e, p, 0);
                let lhs = mu.apply(&bis_side.apply(&xi).unwrap()).unwrap();
                let rhs = bis_side.apply(&mu.apply(&xi).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }

        // a non-intertwiner is rejected
        let skew = BundleMorphism::new(&e, &e, vec![m1(1, 1), m1(2, 1)]).unwrap();
        assert!(matches!(
            validate_morphism(&g, &rep, &rep, &skew),
            Err(Error::NotEquivariant(_))
        ));
    }
}
