//! Random generators for exact test data: rationals, invertible matrices,
//! bundle automorphisms and groupoid representations.
//!
//! Representations are built by a spanning-tree construction: each connected
//! component gets a base object, transversal arrows along a BFS tree, an
//! exact representation of the isotropy group at the base (permutation and
//! sign blocks, conjugated by a random invertible matrix) and a random
//! change of trivialisation per object. The functor laws then hold by
//! construction, with exact rational entries throughout.

use rand::Rng;

use crate::groupoid::{ArrId, FiniteGroupoid};
use crate::linear::{rat, BundleAutomorphism, Matrix, Scalar, Section, VectorBundle};
use crate::transfer::GroupoidRep;

/// A small random rational with numerator in `-3..=3` and denominator in
/// `1..=3`.
pub fn rational(rng: &mut impl Rng) -> Scalar {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

/// A random invertible matrix: unit lower × diagonal × unit upper
/// triangular, with small integer off-diagonal entries and diagonal
/// entries from `{1, -1, 2, 1/2, 3, -1/3}`.
pub fn invertible_matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    let diag_pool = [rat(1, 1), rat(-1, 1), rat(2, 1), rat(1, 2), rat(3, 1), rat(-1, 3)];
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    let mut diag = Matrix::zero(n, n);
    for i in 0..n {
        diag[(i, i)] = diag_pool[rng.gen_range(0..diag_pool.len())].clone();
        for j in 0..i {
            lower[(i, j)] = rat(rng.gen_range(-2..=2), 1);
        }
        for j in (i + 1)..n {
            upper[(i, j)] = rat(rng.gen_range(-2..=2), 1);
        }
    }
    lower.mul(&diag).unwrap().mul(&upper).unwrap()
}

/// A random section of a bundle.
pub fn section(rng: &mut impl Rng, bundle: &VectorBundle) -> Section {
    let values = bundle
        .dims()
        .iter()
        .map(|&d| (0..d).map(|_| rational(rng)).collect())
        .collect();
    Section::new(bundle, values).expect("generated values match the bundle")
}

/// A random scalar function on a base of the given size.
pub fn scalar_fn(rng: &mut impl Rng, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| rational(rng)).collect()
}

/// Random fibre dimensions, between `min_dim` and `max_dim` per point.
/// Zero-dimensional fibres are legal but invisible to sections, so tests of
/// base-bijection recovery want `min_dim ≥ 1`.
pub fn dims(rng: &mut impl Rng, base_len: usize, min_dim: usize, max_dim: usize) -> Vec<usize> {
    (0..base_len).map(|_| rng.gen_range(min_dim..=max_dim)).collect()
}

/// A random bundle automorphism: a dimension-preserving base permutation
/// (shuffled within equal-dimension classes) with random invertible fibre
/// maps.
pub fn bundle_automorphism(rng: &mut impl Rng, bundle: &VectorBundle) -> BundleAutomorphism {
    let n = bundle.base_len();
    let mut base: Vec<usize> = (0..n).collect();
    // Fisher-Yates within each dimension class keeps dims compatible.
    let mut by_dim: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..n {
        by_dim.entry(bundle.dim(x)).or_default().push(x);
    }
    for class in by_dim.values() {
        let mut targets = class.clone();
        for i in (1..targets.len()).rev() {
            targets.swap(i, rng.gen_range(0..=i));
        }
        for (&src, &tgt) in class.iter().zip(&targets) {
            base[src] = tgt;
        }
    }
    let maps = (0..n).map(|x| invertible_matrix(rng, bundle.dim(x))).collect();
    BundleAutomorphism::new(bundle, base, maps).expect("generated automorphism is valid")
}

/// An exact representation of a finite group given by its isotropy arrows:
/// for each element a `dim × dim` block matrix built from permutation
/// (regular representation) blocks, sign blocks when the group has order
/// two, and trivial blocks, conjugated by one random invertible matrix.
fn isotropy_rep(
    rng: &mut impl Rng,
    gpd: &FiniteGroupoid,
    isotropy: &[ArrId],
    dim: usize,
) -> Vec<Matrix> {
    let order = isotropy.len();
    let index_of = |g: ArrId| isotropy.iter().position(|&h| h == g).unwrap();

    // Choose block kinds: 0 = trivial, 1 = sign (order 2 only), 2 = regular.
    let mut blocks: Vec<u8> = Vec::new();
    let mut remaining = dim;
    while remaining > 0 {
        if order > 1 && remaining >= order && rng.gen_bool(0.6) {
            blocks.push(2);
            remaining -= order;
        } else if order == 2 && rng.gen_bool(0.5) {
            blocks.push(1);
            remaining -= 1;
        } else {
            blocks.push(0);
            remaining -= 1;
        }
    }
    let q = invertible_matrix(rng, dim);
    let q_inv = q.inverse().unwrap();

    isotropy
        .iter()
        .map(|&h| {
            let mut block_diag = Matrix::zero(dim, dim);
            let mut at = 0;
            for &kind in &blocks {
                match kind {
                    0 => {
                        block_diag[(at, at)] = rat(1, 1);
                        at += 1;
                    }
                    1 => {
                        let sign = if index_of(h) == index_of(gpd.unit(gpd.src(h))) {
                            1
                        } else {
                            -1
                        };
                        block_diag[(at, at)] = rat(sign, 1);
                        at += 1;
                    }
                    _ => {
                        // Left-regular permutation block: h·k positions.
                        for (col, &k) in isotropy.iter().enumerate() {
                            let hk = gpd.compose_opt(h, k).expect("isotropy is closed");
                            block_diag[(at + index_of(hk), at + col)] = rat(1, 1);
                        }
                        at += order;
                    }
                }
            }
            q.mul(&block_diag).unwrap().mul(&q_inv).unwrap()
        })
        .collect()
}

/// A random valid groupoid representation with fibre dimension between 1
/// and `max_dim` per connected component.
pub fn groupoid_rep(rng: &mut impl Rng, gpd: &FiniteGroupoid, max_dim: usize) -> GroupoidRep {
    let n_obj = gpd.n_objects();
    let mut dims = vec![0usize; n_obj];
    let mut trivialization: Vec<Option<Matrix>> = vec![None; n_obj];
    // Transversal arrow t_x: base → x per object.
    let mut transversal: Vec<Option<ArrId>> = vec![None; n_obj];
    let mut isotropy_tables: Vec<(Vec<ArrId>, Vec<Matrix>)> = Vec::new();
    let mut component_of = vec![usize::MAX; n_obj];

    for component in gpd.components() {
        let base = component[0];
        let isotropy = gpd.isotropy(base);
        let dim = {
            let lo = 1.max(isotropy.len().min(max_dim));
            rng.gen_range(lo..=max_dim.max(lo))
        };
        let rep = isotropy_rep(rng, gpd, &isotropy, dim);
        let comp_idx = isotropy_tables.len();
        isotropy_tables.push((isotropy, rep));

        // BFS over the component, composing tree arrows from the base.
        transversal[base.0] = Some(gpd.unit(base));
        let mut queue = std::collections::VecDeque::from([base]);
        while let Some(x) = queue.pop_front() {
            for e in gpd.arrows() {
                if gpd.src(e) != x {
                    continue;
                }
                let y = gpd.tgt(e);
                if transversal[y.0].is_none() {
                    let t_x = transversal[x.0].unwrap();
                    transversal[y.0] = Some(gpd.compose_opt(e, t_x).expect("tree arrow composes"));
                    queue.push_back(y);
                }
            }
        }
        for &m in &component {
            dims[m.0] = dim;
            component_of[m.0] = comp_idx;
            trivialization[m.0] = Some(invertible_matrix(rng, dim));
        }
    }

    let bundle = VectorBundle::new(dims);
    let arrows = gpd
        .arrows()
        .map(|g| {
            let (x, y) = (gpd.src(g), gpd.tgt(g));
            let (isotropy, rep) = &isotropy_tables[component_of[x.0]];
            let t_x = transversal[x.0].unwrap();
            let t_y = transversal[y.0].unwrap();
            // h = t_y⁻¹ · g · t_x lies in the isotropy at the base.
            let h = gpd
                .compose_opt(gpd.compose_opt(gpd.inverse(t_y), g).unwrap(), t_x)
                .unwrap();
            let idx = isotropy.iter().position(|&k| k == h).unwrap();
            let u_x = trivialization[x.0].as_ref().unwrap();
            let u_y = trivialization[y.0].as_ref().unwrap();
            u_y.mul(&rep[idx])
                .unwrap()
                .mul(&u_x.inverse().unwrap())
                .unwrap()
        })
        .collect();
    GroupoidRep { bundle, arrows }
}

/// Deterministic rng for reproducible tests and benches.
pub fn seeded_rng(seed: u64) -> impl Rng {
    use rand::SeedableRng;
    rand::rngs::StdRng::seed_from_u64(seed)
}
