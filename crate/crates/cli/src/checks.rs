//! The verification suite behind the `roundtrip` and `check` subcommands:
//! named checks with pass/fail/skip outcomes and one line of detail each.

use groupoidrep::bisections::{self, Bisection};
use groupoidrep::linear::{rat, Matrix, Section};
use groupoidrep::selfmaps::{self, SelfMap};
use groupoidrep::semilinear;
use groupoidrep::textio::{self, NamedGroupoid};
use groupoidrep::transfer::{
    induce_bis_rep, induce_sg_rep, morphism_transfer, recover_from_sg_rep, recover_groupoid_rep,
    restrict_to_bis, validate_rep, GroupoidRep,
};
use groupoidrep::{BundleMorphism, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            status: Status::Pass,
            detail: detail.into(),
        }
    }

    fn fail(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            status: Status::Fail,
            detail: detail.into(),
        }
    }

    fn skip(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            status: Status::Skip,
            detail: detail.into(),
        }
    }
}

fn check<T>(name: &str, result: Result<T, String>, ok_detail: &str, out: &mut Vec<CheckResult>) {
    match result {
        Ok(_) => out.push(CheckResult::pass(name, ok_detail)),
        Err(e) => out.push(CheckResult::fail(name, e)),
    }
}

/// Exhaustive group-axiom check through a Cayley index table.
fn group_axioms<T: Ord + Clone>(
    elements: &[T],
    unit: &T,
    mul: impl Fn(&T, &T) -> T,
    inv: impl Fn(&T) -> Result<T, String>,
) -> Result<(), String> {
    let n = elements.len();
    let index = |x: &T| elements.binary_search(x).map_err(|_| "not closed under ⋆".to_string());
    let unit_idx = index(unit)?;
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = index(&mul(&elements[i], &elements[j]))?;
        }
    }
    for i in 0..n {
        if table[i * n + unit_idx] != i || table[unit_idx * n + i] != i {
            return Err("unit law fails".to_string());
        }
        let inv_idx = index(&inv(&elements[i])?)?;
        if table[i * n + inv_idx] != unit_idx || table[inv_idx * n + i] != unit_idx {
            return Err("inverse law fails".to_string());
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = table[i * n + j];
            for k in 0..n {
                if table[ij * n + k] != table[i * n + table[j * n + k]] {
                    return Err("associativity fails".to_string());
                }
            }
        }
    }
    Ok(())
}

/// Checks that concern the groupoid alone.
pub fn groupoid_checks(named: &NamedGroupoid, bound: u128) -> Vec<CheckResult> {
    let gpd = &named.groupoid;
    let mut out = Vec::new();

    let report = gpd.validate();
    if report.is_empty() {
        out.push(CheckResult::pass("groupoid axioms", "all laws hold"));
    } else {
        out.push(CheckResult::fail("groupoid axioms", report.summary()));
    }

    let bis = bisections::enumerate(gpd);
    check(
        "bisection group axioms",
        group_axioms(
            &bis,
            &Bisection::unit(gpd),
            |a, b| bisections::multiply(gpd, a, b),
            |a| Ok(bisections::invert(gpd, a)),
        ),
        &format!("|Bis| = {}", bis.len()),
        &mut out,
    );

    let alpha_star = (|| {
        for s1 in &bis {
            for s2 in &bis {
                let prod = bisections::multiply(gpd, s1, s2);
                let (b1, b2) = (s1.base_map(gpd), s2.base_map(gpd));
                let composed: Vec<usize> = (0..gpd.n_objects()).map(|m| b2[b1[m]]).collect();
                if prod.base_map(gpd) != composed {
                    return Err("α_*(σ1⋆σ2) ≠ α_*(σ2)∘α_*(σ1)".to_string());
                }
            }
        }
        Ok(())
    })();
    check("alpha_* anti-homomorphism", alpha_star, "exact over all pairs", &mut out);

    let witnesses = bisections::witnesses(gpd);
    if witnesses.has_enough() {
        out.push(CheckResult::pass("enough bisections", "every arrow is covered"));
    } else {
        out.push(CheckResult::fail("enough bisections", "some arrow has no bisection through it"));
    }

    match selfmaps::enumerate_units(gpd, bound) {
        Err(Error::TooLarge { space, bound }) => {
            out.push(CheckResult::skip(
                "self-map unit group axioms",
                format!("search space {space} exceeds bound {bound}"),
            ));
        }
        Err(e) => out.push(CheckResult::fail("self-map unit group axioms", e.to_string())),
        Ok(units) => {
            check(
                "self-map unit group axioms",
                group_axioms(
                    units.elements(),
                    &SelfMap::unit(gpd),
                    |a, b| selfmaps::star(gpd, a, b),
                    |a| selfmaps::invert(gpd, a).map_err(|e| e.to_string()),
                ),
                &format!("|S_G(α)| = {}", units.len()),
                &mut out,
            );

            let r_law = (|| {
                for f in units.elements() {
                    for g in units.elements() {
                        let prod = selfmaps::star(gpd, f, g);
                        let (rp, rf, rg) =
                            (selfmaps::r_of(gpd, &prod), selfmaps::r_of(gpd, f), selfmaps::r_of(gpd, g));
                        for x in gpd.arrows() {
                            if rp[x.0] != rg[rf[x.0].0] {
                                return Err("R_(f⋆g) ≠ R_g∘R_f".to_string());
                            }
                        }
                    }
                }
                Ok(())
            })();
            check("R anti-homomorphism", r_law, "exact over all pairs", &mut out);

            let psi = (|| {
                let mut images = Vec::new();
                for s in &bis {
                    let f = bisections::psi_embed(gpd, s);
                    if units.index_of(&f).is_none() {
                        return Err("Ψ(σ) is not a unit".to_string());
                    }
                    images.push(f);
                }
                images.sort();
                images.dedup();
                if images.len() != bis.len() {
                    return Err("Ψ is not injective".to_string());
                }
                for s1 in &bis {
                    for s2 in &bis {
                        let lhs = bisections::psi_embed(gpd, &bisections::multiply(gpd, s1, s2));
                        let rhs = selfmaps::star(
                            gpd,
                            &bisections::psi_embed(gpd, s1),
                            &bisections::psi_embed(gpd, s2),
                        );
                        if lhs != rhs {
                            return Err("Ψ is not multiplicative".to_string());
                        }
                    }
                }
                Ok(())
            })();
            check(
                "Psi embedding",
                psi,
                &format!("injective, multiplicative; image {} of {}", bis.len(), units.len()),
                &mut out,
            );
        }
    }
    out
}

/// Transfer-module invariants for a concrete representation.
pub fn transfer_checks(named: &NamedGroupoid, rep: &GroupoidRep, bound: u128) -> Vec<CheckResult> {
    let gpd = &named.groupoid;
    let mut out = Vec::new();

    let report = validate_rep(gpd, rep);
    if report.is_empty() {
        out.push(CheckResult::pass("representation axioms", "functor laws hold"));
    } else {
        out.push(CheckResult::fail("representation axioms", report.summary()));
        return out;
    }

    let bis_table = match induce_bis_rep(gpd, rep) {
        Ok(t) => t,
        Err(e) => {
            out.push(CheckResult::fail("induce Bis representation", e.to_string()));
            return out;
        }
    };
    if semilinear::is_local_bis(gpd, &bis_table.bundle, bis_table.entries()) {
        out.push(CheckResult::pass("induced Bis representation is local", ""));
    } else {
        out.push(CheckResult::fail("induced Bis representation is local", "locality violated"));
    }

    match recover_groupoid_rep(gpd, &bis_table) {
        Ok(recovered) if &recovered == rep => out.push(CheckResult::pass(
            "roundtrip A: recover(induce(phi)) = phi",
            "matrix-exact, choice-independent",
        )),
        Ok(_) => out.push(CheckResult::fail(
            "roundtrip A: recover(induce(phi)) = phi",
            "recovered representation differs",
        )),
        Err(e) => out.push(CheckResult::fail(
            "roundtrip A: recover(induce(phi)) = phi",
            e.to_string(),
        )),
    }

    match recover_groupoid_rep(gpd, &bis_table).and_then(|r| induce_bis_rep(gpd, &r)) {
        Ok(reinduced) if reinduced == bis_table => out.push(CheckResult::pass(
            "roundtrip B: induce(recover(rho)) = rho",
            "carriers exact for every bisection",
        )),
        Ok(_) => out.push(CheckResult::fail(
            "roundtrip B: induce(recover(rho)) = rho",
            "re-induced table differs",
        )),
        Err(e) => out.push(CheckResult::fail(
            "roundtrip B: induce(recover(rho)) = rho",
            e.to_string(),
        )),
    }

    match induce_sg_rep(gpd, rep, bound) {
        Err(Error::TooLarge { space, bound }) => {
            let msg = format!("search space {space} exceeds bound {bound}");
            out.push(CheckResult::skip("induced S_G representation is local", msg.clone()));
            out.push(CheckResult::skip("triangle: restrict(induce_sg) = induce_bis", msg.clone()));
            out.push(CheckResult::skip("S_G recovery agrees on the base", msg));
        }
        Err(e) => out.push(CheckResult::fail("induce S_G representation", e.to_string())),
        Ok(sg_table) => {
            if semilinear::is_local_sg(gpd, &sg_table.bundle, sg_table.entries()) {
                out.push(CheckResult::pass("induced S_G representation is local", ""));
            } else {
                out.push(CheckResult::fail("induced S_G representation is local", "locality violated"));
            }

            match restrict_to_bis(gpd, &sg_table, &rep.bundle) {
                Ok(restricted) if restricted == bis_table => out.push(CheckResult::pass(
                    "triangle: restrict(induce_sg) = induce_bis",
                    "carriers exact, fibre constancy verified",
                )),
                Ok(_) => out.push(CheckResult::fail(
                    "triangle: restrict(induce_sg) = induce_bis",
                    "restricted table differs",
                )),
                Err(e) => out.push(CheckResult::fail(
                    "triangle: restrict(induce_sg) = induce_bis",
                    e.to_string(),
                )),
            }

            match recover_from_sg_rep(gpd, &sg_table, &rep.bundle) {
                Ok(r) if &r.rep == rep => out.push(CheckResult::pass(
                    "S_G recovery agrees on the base",
                    if r.full_agreement {
                        "agreement holds on all of G (informational)"
                    } else {
                        "agreement on M only (informational: differs off the base)"
                    },
                )),
                Ok(_) => out.push(CheckResult::fail(
                    "S_G recovery agrees on the base",
                    "recovered representation differs",
                )),
                Err(e) => out.push(CheckResult::fail(
                    "S_G recovery agrees on the base",
                    e.to_string(),
                )),
            }
        }
    }

    let functorial = (|| {
        let e = &rep.bundle;
        let id = BundleMorphism::identity(e);
        let (bis_id, _) = morphism_transfer(gpd, rep, rep, &id).map_err(|e| e.to_string())?;
        if bis_id != id {
            return Err("identity intertwiner does not transfer to the identity".to_string());
        }
        let scalars = [rat(2, 1), rat(3, 1), rat(1, 2)];
        let mut seen: Vec<BundleMorphism> = vec![bis_id];
        for s in &scalars {
            let delta = BundleMorphism {
                maps: e.dims().iter().map(|&d| Matrix::identity(d).scale(s)).collect(),
            };
            let (b, _) = morphism_transfer(gpd, rep, rep, &delta).map_err(|e| e.to_string())?;
            // transferred map acts pointwise
            for p in 0..e.base_len() {
                for c in 0..e.dim(p) {
                    let xi = Section::delta(e, p, c);
                    let out = b.apply(&xi).map_err(|e| e.to_string())?;
                    if out != xi.scale(s) {
                        return Err("scalar intertwiner does not act by the scalar".to_string());
                    }
                }
            }
            if seen.contains(&b) {
                return Err("distinct intertwiners transferred to equal maps".to_string());
            }
            seen.push(b);
        }
        Ok(())
    })();
    check(
        "functoriality: intertwiner transfer",
        functorial,
        "identity preserved; scalar family stays distinct",
        &mut out,
    );

    let json_roundtrip = (|| {
        let json = textio::export_groupoid_json(named);
        let back = textio::parse_groupoid_json(&json).map_err(|e| e.to_string())?;
        if &back != named {
            return Err("groupoid JSON round trip not lossless".to_string());
        }
        let rep_json = textio::export_rep_json(named, rep);
        let back = textio::parse_rep_json(&rep_json, named).map_err(|e| e.to_string())?;
        if &back != rep {
            return Err("representation JSON round trip not lossless".to_string());
        }
        Ok(())
    })();
    check("JSON export round trip", json_roundtrip, "parse(export(x)) = x", &mut out);

    out
}
