//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Every check is exact (tolerance zero); quantitative counts are verified
//! against brute-force oracles that enumerate raw maps with no backtracking,
//! independent of the library's enumeration path. Run with
//! `cargo test -p groupoidrep --test acceptance -- --nocapture` to see the
//! per-criterion lines.

#![allow(clippy::needless_range_loop)]

use std::time::{Duration, Instant};

use groupoidrep::bisections::{self, Bisection};
use groupoidrep::gen;
use groupoidrep::groupoid::{ArrId, FiniteGroupoid, GroupTable, ObjId};
use groupoidrep::linear::{pullback_bundle, rat, Matrix, Section, VectorBundle};
use groupoidrep::selfmaps::{self, SelfMap};
use groupoidrep::semilinear::{
    self, bisection_to_bundle_aut, bundle_aut_to_bisection, gamma_iso, nu, nu_inverse,
};
use groupoidrep::textio;
use groupoidrep::transfer::{
    induce_bis_rep, induce_sg_rep, morphism_transfer, recover_from_sg_rep, recover_groupoid_rep,
    restrict_to_bis, validate_rep, BisRep, GroupoidRep,
};
use groupoidrep::{BundleAutomorphism, BundleMorphism, Error, SemiLinearMap};

const BOUND: u128 = 1_000_000;

fn p2() -> FiniteGroupoid {
    FiniteGroupoid::pair(2)
}

fn z2() -> FiniteGroupoid {
    FiniteGroupoid::group(&GroupTable::cyclic(2)).unwrap()
}

fn gb2() -> FiniteGroupoid {
    FiniteGroupoid::group_bundle(&GroupTable::cyclic(2), 2).unwrap()
}

fn group_law_fixtures() -> Vec<(&'static str, FiniteGroupoid)> {
    vec![
        ("P2", p2()),
        ("pair(3)", FiniteGroupoid::pair(3)),
        ("Z2", z2()),
        ("GB2", gb2()),
    ]
}

/// Fixture R: the line-bundle representation of P2 with φ((a,b)) = [2].
fn fixture_r() -> GroupoidRep {
    GroupoidRep {
        bundle: VectorBundle::constant(2, 1),
        arrows: vec![
            Matrix::identity(1),
            Matrix::from_rows(vec![vec![rat(2, 1)]]).unwrap(),
            Matrix::from_rows(vec![vec![rat(1, 2)]]).unwrap(),
            Matrix::identity(1),
        ],
    }
}

/// Named representation fixtures used by the locality/triangle criteria.
fn rep_fixtures() -> Vec<(&'static str, FiniteGroupoid, GroupoidRep)> {
    let mut rng = gen::seeded_rng(2024);
    let p3 = FiniteGroupoid::pair(3);
    let p3_rep = gen::groupoid_rep(&mut rng, &p3, 2);
    let sign = |g: &FiniteGroupoid, s: i64| GroupoidRep {
        bundle: VectorBundle::constant(g.n_objects(), 1),
        arrows: g
            .arrows()
            .map(|a| {
                let is_unit = g.unit(g.src(a)) == a;
                Matrix::from_rows(vec![vec![rat(if is_unit { 1 } else { s }, 1)]]).unwrap()
            })
            .collect(),
    };
    vec![
        ("R on P2", p2(), fixture_r()),
        ("rank-2 on pair(3)", p3, p3_rep),
        ("sign on Z2", z2(), sign(&z2(), -1)),
        ("sign on GB2", gb2(), sign(&gb2(), -1)),
        ("trivial on GB2", gb2(), GroupoidRep::trivial(&gb2(), VectorBundle::constant(2, 1))),
    ]
}

/// Oracle: enumerate every map M → G and filter by the bisection axioms.
fn oracle_bisections(gpd: &FiniteGroupoid) -> Vec<Bisection> {
    let n = gpd.n_objects();
    let k = gpd.n_arrows();
    let mut out = Vec::new();
    let mut counter = vec![0usize; n];
    'outer: loop {
        let cand = Bisection::from_table(counter.iter().map(|&i| ArrId(i)).collect());
        if bisections::is_valid(gpd, &cand) {
            out.push(cand);
        }
        for pos in 0..=n {
            if pos == n {
                break 'outer;
            }
            counter[pos] += 1;
            if counter[pos] < k {
                continue 'outer;
            }
            counter[pos] = 0;
        }
    }
    out.sort();
    out
}

/// Oracle: enumerate every map G → G and filter by validity plus
/// bijectivity of R_f.
fn oracle_sg_units(gpd: &FiniteGroupoid) -> Vec<SelfMap> {
    let n = gpd.n_arrows();
    let mut out = Vec::new();
    let mut counter = vec![0usize; n];
    'outer: loop {
        let cand = SelfMap::from_table(counter.iter().map(|&i| ArrId(i)).collect());
        if selfmaps::is_valid(gpd, &cand) && selfmaps::is_unit(gpd, &cand) {
            out.push(cand);
        }
        for pos in 0..=n {
            if pos == n {
                break 'outer;
            }
            counter[pos] += 1;
            if counter[pos] < n {
                continue 'outer;
            }
            counter[pos] = 0;
        }
    }
    out.sort();
    out
}

/// Checks all group axioms exhaustively through a Cayley index table:
/// closure while filling the table, then unit, inverses and associativity.
fn assert_group_axioms<T: Ord + Clone>(
    name: &str,
    elements: &[T],
    unit: &T,
    mul: impl Fn(&T, &T) -> T,
    inv: impl Fn(&T) -> T,
) {
    let n = elements.len();
    let index = |x: &T| -> usize {
        elements
            .binary_search(x)
            .unwrap_or_else(|_| panic!("{name}: not closed under the group operation"))
    };
    let unit_idx = index(unit);
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = index(&mul(&elements[i], &elements[j]));
        }
    }
    for i in 0..n {
        assert_eq!(table[i * n + unit_idx], i, "{name}: right unit fails");
        assert_eq!(table[unit_idx * n + i], i, "{name}: left unit fails");
        let inv_idx = index(&inv(&elements[i]));
        assert_eq!(table[i * n + inv_idx], unit_idx, "{name}: right inverse fails");
        assert_eq!(table[inv_idx * n + i], unit_idx, "{name}: left inverse fails");
    }
    for i in 0..n {
        for j in 0..n {
            let ij = table[i * n + j];
            for k in 0..n {
                assert_eq!(
                    table[ij * n + k],
                    table[i * n + table[j * n + k]],
                    "{name}: associativity fails"
                );
            }
        }
    }
}

#[test]
fn criterion_1_group_law_suite() {
    let start = Instant::now();
    for (name, gpd) in group_law_fixtures() {
        let bis = bisections::enumerate(&gpd);
        assert_group_axioms(
            &format!("Bis({name})"),
            &bis,
            &Bisection::unit(&gpd),
            |a, b| bisections::multiply(&gpd, a, b),
            |a| bisections::invert(&gpd, a),
        );
        let units = selfmaps::enumerate_units(&gpd, BOUND).unwrap();
        assert_group_axioms(
            &format!("S_{name}(α)"),
            units.elements(),
            &SelfMap::unit(&gpd),
            |a, b| selfmaps::star(&gpd, a, b),
            |a| selfmaps::invert(&gpd, a).unwrap(),
        );
    }
    // Counts against the independent brute-force oracles.
    let mut factorial = 1usize;
    for n in 2..=4 {
        factorial *= n;
        let gpd = FiniteGroupoid::pair(n);
        let enumerated = bisections::enumerate(&gpd);
        assert_eq!(enumerated.len(), factorial, "|Bis(pair({n}))| = {n}!");
        assert_eq!(enumerated, oracle_bisections(&gpd));
    }
    let units = selfmaps::enumerate_units(&p2(), BOUND).unwrap();
    assert_eq!(units.len(), 4, "|S_P2(α)| = 4");
    assert_eq!(units.elements(), oracle_sg_units(&p2()).as_slice());
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "criterion 1 took {elapsed:?}");
    println!("criterion 1 (group-law suite, oracle counts, < 10 s): PASS [{elapsed:?}]");
}

#[test]
fn criterion_2_anti_homomorphism_laws() {
    for (name, gpd) in group_law_fixtures() {
        let bis = bisections::enumerate(&gpd);
        for s1 in &bis {
            for s2 in &bis {
                let prod = bisections::multiply(&gpd, s1, s2);
                let (b1, b2) = (s1.base_map(&gpd), s2.base_map(&gpd));
                let composed: Vec<usize> = (0..gpd.n_objects()).map(|m| b2[b1[m]]).collect();
                assert_eq!(prod.base_map(&gpd), composed, "α_* anti-homomorphism on {name}");
            }
        }
        let units = selfmaps::enumerate_units(&gpd, BOUND).unwrap();
        for f in units.elements() {
            for g in units.elements() {
                let prod = selfmaps::star(&gpd, f, g);
                let (rp, rf, rg) = (
                    selfmaps::r_of(&gpd, &prod),
                    selfmaps::r_of(&gpd, f),
                    selfmaps::r_of(&gpd, g),
                );
                for x in gpd.arrows() {
                    assert_eq!(rp[x.0], rg[rf[x.0].0], "R anti-homomorphism on {name}");
                }
            }
        }
    }
    println!("criterion 2 (α_* and R anti-homomorphism laws, exact): PASS");
}

#[test]
fn criterion_3_iso_chain_round_trips() {
    let mut rng = gen::seeded_rng(42);
    let mut count = 0;
    while count < 20 {
        let base_len = 1 + count % 4;
        // Positive fibre dimensions: a zero-dimensional fibre is invisible
        // to sections, so the covering bijection would not be unique there.
        let dims = gen::dims(&mut rng, base_len, 1, 3);
        let bundle = VectorBundle::new(dims);
        let aut = gen::bundle_automorphism(&mut rng, &bundle);
        count += 1;

        // ν⁻¹∘ν = id on Aut(E)
        let mu = nu(aut.clone());
        let abstract_map = mu.to_abstract(&bundle).unwrap();
        assert_eq!(nu_inverse(&abstract_map).unwrap(), aut);

        // ν∘ν⁻¹ = id on semi-linear maps
        let mu_back = nu(nu_inverse(&abstract_map).unwrap());
        assert_eq!(mu_back.to_abstract(&bundle).unwrap(), abstract_map);

        // B and its inverse are mutually inverse
        let sigma = bundle_aut_to_bisection(&bundle, &aut);
        assert_eq!(bisection_to_bundle_aut(&bundle, &sigma).unwrap(), aut);

        // γ = ν∘B as linear maps on the delta basis
        let gamma = gamma_iso(&bundle, &sigma).unwrap();
        for p in 0..bundle.base_len() {
            for c in 0..bundle.dim(p) {
                let xi = Section::delta(&bundle, p, c);
                let direct: Vec<_> = (0..bundle.base_len())
                    .map(|m| {
                        let a = sigma.apply(m);
                        a.matrix.apply(xi.value(a.src)).unwrap()
                    })
                    .collect();
                let via_nu = gamma.apply(&xi).unwrap();
                for (m, v) in direct.iter().enumerate() {
                    assert_eq!(via_nu.value(m), v.as_slice());
                }
            }
        }
    }
    println!("criterion 3 (iso chain ν, ν⁻¹, B on 20 random automorphisms): PASS");
}

#[test]
fn criterion_4_recovery_round_trips() {
    let start = Instant::now();
    let mut rng = gen::seeded_rng(4242);
    let fixtures = vec![p2(), FiniteGroupoid::pair(3), gb2()];
    let mut reps = 0;
    while reps < 10 {
        for gpd in &fixtures {
            let rep = gen::groupoid_rep(&mut rng, gpd, 3);
            assert!(validate_rep(gpd, &rep).is_empty());
            let table = induce_bis_rep(gpd, &rep).unwrap();
            // forward-backward: recover(induce(φ)) = φ, matrix-exact; the
            // recovery itself asserts choice independence across every
            // witness bisection.
            let recovered = recover_groupoid_rep(gpd, &table).unwrap();
            assert_eq!(recovered, rep);
            // backward-forward: induce(recover(ρ)) = ρ as (F, b) carriers.
            let reinduced = induce_bis_rep(gpd, &recovered).unwrap();
            assert_eq!(reinduced, table);
            reps += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "criterion 4 took {elapsed:?}");
    println!("criterion 4 (induce/recover round trips on {reps} random reps, < 30 s): PASS [{elapsed:?}]");
}

#[test]
fn criterion_5_locality() {
    for (name, gpd, rep) in rep_fixtures() {
        let bis_table = induce_bis_rep(&gpd, &rep).unwrap();
        assert!(
            semilinear::is_local_bis(&gpd, &bis_table.bundle, bis_table.entries()),
            "induced Bis-rep local on {name}"
        );
        let sg_table = induce_sg_rep(&gpd, &rep, BOUND).unwrap();
        assert!(
            semilinear::is_local_sg(&gpd, &sg_table.bundle, sg_table.entries()),
            "induced S_G-rep local on {name}"
        );
    }

    // The semi-linear homomorphism over GB2 that scales ξ(b) by −1 whenever
    // σ(a) = s is rejected by recovery with NotLocal.
    let gpd = gb2();
    let e = VectorBundle::constant(2, 1);
    let entries = bisections::enumerate(&gpd)
        .into_iter()
        .map(|s| {
            let sign = if s.apply(ObjId(0)) == ArrId(1) { -1 } else { 1 };
            let aut = BundleAutomorphism::new(
                &e,
                vec![0, 1],
                vec![
                    Matrix::identity(1),
                    Matrix::from_rows(vec![vec![rat(sign, 1)]]).unwrap(),
                ],
            )
            .unwrap();
            (s, nu(aut))
        })
        .collect();
    let nonlocal = BisRep::new(e, entries);
    assert!(matches!(
        recover_groupoid_rep(&gpd, &nonlocal),
        Err(Error::NotLocal(_))
    ));
    println!("criterion 5 (locality of induced reps; non-local rejected): PASS");
}

#[test]
fn criterion_6_triangle_diagram() {
    for (name, gpd, rep) in rep_fixtures() {
        let sg_table = induce_sg_rep(&gpd, &rep, BOUND).unwrap();
        // restrict_to_bis verifies fibre constancy pointwise on the way.
        let restricted = restrict_to_bis(&gpd, &sg_table, &rep.bundle).unwrap();
        let direct = induce_bis_rep(&gpd, &rep).unwrap();
        assert_eq!(restricted, direct, "triangle diagram on {name}");
    }
    println!("criterion 6 (triangle: restrict∘induce_sg = induce_bis, carriers exact): PASS");
}

#[test]
fn criterion_7_sg_agreement_on_base() {
    for (name, gpd, rep) in [
        ("P2", p2(), fixture_r()),
        ("GB2", gb2(), {
            let g = gb2();
            GroupoidRep {
                bundle: VectorBundle::constant(2, 1),
                arrows: g
                    .arrows()
                    .map(|a| {
                        let s = if g.unit(g.src(a)) == a { 1 } else { -1 };
                        Matrix::from_rows(vec![vec![rat(s, 1)]]).unwrap()
                    })
                    .collect(),
            }
        }),
    ] {
        let sg_table = induce_sg_rep(&gpd, &rep, BOUND).unwrap();
        // recover_from_sg_rep asserts ρ_(φ,S)(f)ξ = ρ_S(f)ξ at every unit
        // arrow, for every f in S_G(α) and every delta section.
        let out = recover_from_sg_rep(&gpd, &sg_table, &rep.bundle).unwrap();
        assert_eq!(out.rep, rep, "recovered φ on {name}");
        assert!(out.full_agreement, "informational full-G agreement on {name}");
    }
    println!("criterion 7 (S_G recovery agrees on M for all f and delta sections): PASS");
}

#[test]
fn criterion_8_functoriality_and_faithfulness() {
    let gpd = p2();
    let rep1 = fixture_r();
    let e = rep1.bundle.clone();
    let mut rng = gen::seeded_rng(99);

    // A 3-object chain φ1 → φ2 → φ3 built from changes of trivialisation.
    let c: Vec<Matrix> = (0..2).map(|_| gen::invertible_matrix(&mut rng, 1)).collect();
    let d: Vec<Matrix> = (0..2).map(|_| gen::invertible_matrix(&mut rng, 1)).collect();
    let conjugate = |rep: &GroupoidRep, t: &[Matrix]| GroupoidRep {
        bundle: rep.bundle.clone(),
        arrows: gpd
            .arrows()
            .map(|g| {
                t[gpd.tgt(g).0]
                    .mul(rep.matrix(g))
                    .unwrap()
                    .mul(&t[gpd.src(g).0].inverse().unwrap())
                    .unwrap()
            })
            .collect(),
    };
    let rep2 = conjugate(&rep1, &c);
    let rep3 = conjugate(&rep2, &d);
    let delta1 = BundleMorphism::new(&e, &e, c.clone()).unwrap();
    let delta2 = BundleMorphism::new(&e, &e, d.clone()).unwrap();
    let composed = delta2.compose(&delta1).unwrap();

    // identity is preserved
    let id = BundleMorphism::identity(&e);
    let (bis_id, sg_id) = morphism_transfer(&gpd, &rep1, &rep1, &id).unwrap();
    assert_eq!(bis_id, id);
    assert_eq!(sg_id, id.pullback(&gpd));

    // composition is preserved
    let (bis_1, sg_1) = morphism_transfer(&gpd, &rep1, &rep2, &delta1).unwrap();
    let (bis_2, sg_2) = morphism_transfer(&gpd, &rep2, &rep3, &delta2).unwrap();
    let (bis_12, sg_12) = morphism_transfer(&gpd, &rep1, &rep3, &composed).unwrap();
    assert_eq!(bis_2.compose(&bis_1).unwrap(), bis_12);
    assert_eq!(sg_2.compose(&sg_1).unwrap(), sg_12);

    // equivariance of the transferred maps for the induced actions
    let t1 = induce_bis_rep(&gpd, &rep1).unwrap();
    let t2 = induce_bis_rep(&gpd, &rep2).unwrap();
    for ((_, mu1), (_, mu2)) in t1.entries().iter().zip(t2.entries()) {
        for p in 0..2 {
            let xi = Section::delta(&e, p, 0);
            assert_eq!(
                mu2.apply(&bis_1.apply(&xi).unwrap()).unwrap(),
                bis_1.apply(&mu1.apply(&xi).unwrap()).unwrap()
            );
        }
    }

    // faithfulness: five scalar intertwiners stay pairwise distinct
    let scalars = [rat(1, 1), rat(2, 1), rat(3, 1), rat(1, 2), rat(5, 1)];
    let mut transferred = Vec::new();
    for s in &scalars {
        let delta = BundleMorphism::new(
            &e,
            &e,
            vec![Matrix::identity(1).scale(s), Matrix::identity(1).scale(s)],
        )
        .unwrap();
        let (bis_side, sg_side) = morphism_transfer(&gpd, &rep1, &rep1, &delta).unwrap();
        transferred.push((bis_side, sg_side));
    }
    for i in 0..transferred.len() {
        for j in 0..i {
            assert_ne!(transferred[i].0, transferred[j].0, "distinct δ, distinct ρ(δ)");
            assert_ne!(transferred[i].1, transferred[j].1, "distinct δ, distinct ρ_S(δ)");
        }
    }
    println!("criterion 8 (functoriality and faithfulness of morphism transfer): PASS");
}

#[test]
fn criterion_9_parser_exporter_round_trip() {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    let gpd_fixtures = ["p2.gpd", "p3.gpd", "p4.gpd", "z2.gpd", "gb2.gpd", "act2.gpd", "p2_explicit.gpd"];
    for file in gpd_fixtures {
        let text = std::fs::read_to_string(format!("{root}/{file}")).unwrap();
        let named = textio::parse_groupoid(&text).unwrap();
        let json = textio::export_groupoid_json(&named);
        assert_eq!(textio::parse_groupoid_json(&json).unwrap(), named, "JSON round trip of {file}");
    }
    for (gpd_file, rep_file) in [
        ("p2.gpd", "r.grep"),
        ("p3.gpd", "p3.grep"),
        ("z2.gpd", "z2_sign.grep"),
        ("gb2.gpd", "gb2_sign.grep"),
    ] {
        let named = textio::parse_groupoid(
            &std::fs::read_to_string(format!("{root}/{gpd_file}")).unwrap(),
        )
        .unwrap();
        let rep = textio::parse_rep(
            &std::fs::read_to_string(format!("{root}/{rep_file}")).unwrap(),
            &named,
        )
        .unwrap();
        let json = textio::export_rep_json(&named, &rep);
        assert_eq!(textio::parse_rep_json(&json, &named).unwrap(), rep, "JSON round trip of {rep_file}");
        let grep = textio::export_rep_grep(&named, &rep);
        assert_eq!(textio::parse_rep(&grep, &named).unwrap(), rep, ".grep round trip of {rep_file}");
    }
    println!("criterion 9a (JSON round trip lossless on the fixture corpus): PASS");
    println!("criterion 9b (CLI `check` exit codes and timing) runs in the CLI acceptance test");
}

/// Resolution of the open fixture question: on finite groupoids the
/// enough-bisections condition cannot fail. Any arrow extends to a
/// bisection through its target (route the remaining objects of its
/// component with any compatible permutation, unit sections elsewhere), so
/// the suite asserts the positive on every fixture, including the action
/// groupoid and a mixed disjoint union.
#[test]
fn enough_bisections_always_holds_on_finite_fixtures() {
    let swap = groupoidrep::ActionTable::new(vec![vec![0, 1], vec![1, 0]]);
    let act = FiniteGroupoid::action(&GroupTable::cyclic(2), &swap).unwrap();
    let mut fixtures = vec![act, FiniteGroupoid::pair(4)];
    fixtures.extend(group_law_fixtures().into_iter().map(|(_, g)| g));
    // Mixed disjoint union: Z/3 bundle point plus a pair component.
    let z3_bundle = FiniteGroupoid::group_bundle(&GroupTable::cyclic(3), 2).unwrap();
    fixtures.push(z3_bundle);
    for gpd in fixtures {
        let witnesses = bisections::witnesses(&gpd);
        assert!(witnesses.has_enough());
        for g in gpd.arrows() {
            assert_eq!(witnesses.witness_for(g).unwrap().apply(gpd.tgt(g)), g);
        }
    }
    println!("finding: every finite fixture has enough bisections (no negative example exists)");
}

/// The embedding Ψ is injective but generally not surjective: the counts
/// differ on P2 and pair(3); they coincide on Z2 and GB2, recorded as a
/// finding rather than a failure.
#[test]
fn psi_image_generally_proper() {
    let cases = [
        ("P2", p2(), false),
        ("pair(3)", FiniteGroupoid::pair(3), false),
        ("Z2", z2(), true),
        ("GB2", gb2(), true),
    ];
    for (name, gpd, equal) in cases {
        let bis = bisections::enumerate(&gpd);
        let units = selfmaps::enumerate_units(&gpd, BOUND).unwrap();
        let mut embedded: Vec<SelfMap> =
            bis.iter().map(|s| bisections::psi_embed(&gpd, s)).collect();
        embedded.sort();
        embedded.dedup();
        assert_eq!(embedded.len(), bis.len(), "Ψ injective on {name}");
        for f in &embedded {
            assert!(units.index_of(f).is_some(), "Ψ lands in S_G(α) on {name}");
        }
        assert_eq!(embedded.len() == units.len(), equal, "Ψ surjectivity on {name}");
    }
    println!("finding: Ψ(Bis) ⊊ S_G(α) on P2 and pair(3); equality on Z2 and GB2");
}

/// Internal consistency: the materialised tables agree with the on-demand
/// evaluators for single elements.
#[test]
fn tables_agree_with_evaluators() {
    use groupoidrep::transfer::{induce_bis_map, induce_sg_map};
    for (_, gpd, rep) in rep_fixtures() {
        let bis_table = induce_bis_rep(&gpd, &rep).unwrap();
        for (s, mu) in bis_table.entries() {
            assert_eq!(*mu, induce_bis_map(&gpd, &rep, s));
        }
        let sg_table = induce_sg_rep(&gpd, &rep, BOUND).unwrap();
        for (f, mu) in sg_table.entries() {
            assert_eq!(*mu, induce_sg_map(&gpd, &rep, f));
        }
    }
}

/// The identity SemiLinearMap type check used across the suite.
#[test]
fn identity_semilinear_map_is_identity() {
    let e = VectorBundle::new(vec![2, 1]);
    assert!(SemiLinearMap::identity(&e).is_identity());
    assert!(nu(BundleAutomorphism::identity(&e)).is_identity());
    let _ = pullback_bundle(&p2(), &e.clone());
}
