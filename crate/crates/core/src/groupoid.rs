//! Finite groupoids with dense structure tables.
//!
//! A groupoid `G ⇉ M` is stored as indexed tables: `src` is the source map α,
//! `tgt` the target map β, `unit` the object inclusion `m ↦ 1_m`, `inv` the
//! arrow inversion and `mul` the partial composition. The composability
//! convention throughout the crate is
//!
//! ```text
//! g·h is defined  iff  α(g) = β(h),   with β(gh) = β(g) and α(gh) = α(h).
//! ```
//!
//! Units are genuine arrows; whenever a formula treats an object `m` as an
//! arrow it means `unit(m)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationReport};

/// Index of an object of the base `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjId(pub usize);

/// Index of an arrow of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArrId(pub usize);

impl std::fmt::Display for ObjId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl std::fmt::Display for ArrId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// A finite groupoid with all structure maps stored as dense tables.
///
/// Immutable after construction; every accessor is a table lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    n_objects: usize,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    unit: Vec<ArrId>,
    inv: Vec<ArrId>,
    /// Row-major `|G| × |G|` table; `mul[g][h]` is `g·h` when composable.
    mul: Vec<Option<ArrId>>,
}

impl FiniteGroupoid {
    /// Raw constructor from tables. Checks only index bounds and table
    /// shapes; run [`FiniteGroupoid::validate`] for the groupoid laws.
    pub fn from_tables(
        n_objects: usize,
        src: Vec<ObjId>,
        tgt: Vec<ObjId>,
        unit: Vec<ArrId>,
        inv: Vec<ArrId>,
        mul: Vec<Option<ArrId>>,
    ) -> Result<Self> {
        let n = src.len();
        if tgt.len() != n || inv.len() != n || mul.len() != n * n || unit.len() != n_objects {
            return Err(Error::MalformedTable(format!(
                "table shapes inconsistent: {} arrows, {} objects",
                n, n_objects
            )));
        }
        let obj_ok = |o: ObjId| o.0 < n_objects;
        let arr_ok = |a: ArrId| a.0 < n;
        if !src.iter().all(|&o| obj_ok(o)) || !tgt.iter().all(|&o| obj_ok(o)) {
            return Err(Error::MalformedTable("source/target index out of range".into()));
        }
        if !unit.iter().all(|&a| arr_ok(a)) || !inv.iter().all(|&a| arr_ok(a)) {
            return Err(Error::MalformedTable("unit/inverse index out of range".into()));
        }
        if !mul.iter().flatten().all(|&a| arr_ok(a)) {
            return Err(Error::MalformedTable("product index out of range".into()));
        }
        Ok(Self {
            n_objects,
            src,
            tgt,
            unit,
            inv,
            mul,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_arrows(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.n_objects).map(ObjId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrId> {
        (0..self.src.len()).map(ArrId)
    }

    /// Source map α.
    pub fn src(&self, g: ArrId) -> ObjId {
        self.src[g.0]
    }

    /// Target map β.
    pub fn tgt(&self, g: ArrId) -> ObjId {
        self.tgt[g.0]
    }

    /// The unit arrow `1_m` at an object.
    pub fn unit(&self, m: ObjId) -> ArrId {
        self.unit[m.0]
    }

    pub fn inverse(&self, g: ArrId) -> ArrId {
        self.inv[g.0]
    }

    /// `g·h` if composable, i.e. if `α(g) = β(h)`.
    pub fn compose_opt(&self, g: ArrId, h: ArrId) -> Option<ArrId> {
        self.mul[g.0 * self.src.len() + h.0]
    }

    /// `g·h`, with [`Error::NotComposable`] when `α(g) ≠ β(h)`.
    pub fn compose(&self, g: ArrId, h: ArrId) -> Result<ArrId> {
        self.compose_opt(g, h).ok_or(Error::NotComposable {
            g: g.0,
            h: h.0,
            g_src: self.src(g).0,
            h_tgt: self.tgt(h).0,
        })
    }

    /// Arrows with target `m`, the β-fibre over `m`.
    pub fn tgt_fiber(&self, m: ObjId) -> Vec<ArrId> {
        self.arrows().filter(|&g| self.tgt(g) == m).collect()
    }

    /// Arrows with source `m`, the α-fibre over `m`.
    pub fn src_fiber(&self, m: ObjId) -> Vec<ArrId> {
        self.arrows().filter(|&g| self.src(g) == m).collect()
    }

    /// Exhaustively checks every groupoid law and reports each violation
    /// with witnesses. Violations are report entries, not faults.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.n_arrows();

        for g in self.arrows() {
            for h in self.arrows() {
                let composable = self.src(g) == self.tgt(h);
                match self.compose_opt(g, h) {
                    Some(gh) if !composable => report.push(
                        "composability",
                        vec![g.to_string(), h.to_string()],
                        format!("{g}·{h} = {gh} defined although α({g}) ≠ β({h})"),
                    ),
                    None if composable => report.push(
                        "composability",
                        vec![g.to_string(), h.to_string()],
                        format!("{g}·{h} undefined although α({g}) = β({h})"),
                    ),
                    Some(gh) if self.tgt(gh) != self.tgt(g) || self.src(gh) != self.src(h) => {
                        report.push(
                            "anchor",
                            vec![g.to_string(), h.to_string()],
                            format!("β/α of {g}·{h} = {gh} do not match β({g}), α({h})"),
                        );
                    }
                    _ => {}
                }
            }
        }

        // Associativity over composable triples.
        for g in self.arrows() {
            for h in self.arrows() {
                let Some(gh) = self.compose_opt(g, h) else { continue };
                for k in self.arrows() {
                    let Some(hk) = self.compose_opt(h, k) else { continue };
                    if self.compose_opt(gh, k) != self.compose_opt(g, hk) {
                        report.push(
                            "associativity",
                            vec![g.to_string(), h.to_string(), k.to_string()],
                            format!("({g}·{h})·{k} ≠ {g}·({h}·{k})"),
                        );
                    }
                }
            }
        }

        for m in self.objects() {
            let u = self.unit(m);
            if self.src(u) != m || self.tgt(u) != m {
                report.push(
                    "unit-anchor",
                    vec![m.to_string()],
                    format!("unit {u} of {m} has α = {}, β = {}", self.src(u), self.tgt(u)),
                );
            }
        }

        for g in self.arrows() {
            let lu = self.unit(self.tgt(g));
            let ru = self.unit(self.src(g));
            if self.compose_opt(lu, g) != Some(g) {
                report.push(
                    "left-unit",
                    vec![g.to_string()],
                    format!("1_β({g})·{g} ≠ {g}"),
                );
            }
            if self.compose_opt(g, ru) != Some(g) {
                report.push(
                    "right-unit",
                    vec![g.to_string()],
                    format!("{g}·1_α({g}) ≠ {g}"),
                );
            }
            let gi = self.inverse(g);
            if self.src(gi) != self.tgt(g) || self.tgt(gi) != self.src(g) {
                report.push(
                    "inverse-anchor",
                    vec![g.to_string()],
                    format!("α({g}⁻¹) ≠ β({g}) or β({g}⁻¹) ≠ α({g})"),
                );
                continue;
            }
            if self.compose_opt(g, gi) != Some(self.unit(self.tgt(g)))
                || self.compose_opt(gi, g) != Some(self.unit(self.src(g)))
            {
                report.push(
                    "inverse",
                    vec![g.to_string()],
                    format!("{g}·{g}⁻¹ ≠ 1_β({g}) or {g}⁻¹·{g} ≠ 1_α({g})"),
                );
            }
        }

        let _ = n;
        report
    }

    /// Pair groupoid `P(M)` on `n` objects: one arrow `(y, x)` for every
    /// ordered pair, with `α(y,x) = x` and `β(y,x) = y`.
    pub fn pair(n: usize) -> Self {
        let id = |y: usize, x: usize| ArrId(y * n + x);
        let n_arr = n * n;
        let mut src = vec![ObjId(0); n_arr];
        let mut tgt = vec![ObjId(0); n_arr];
        let mut inv = vec![ArrId(0); n_arr];
        let mut unit = vec![ArrId(0); n];
        for y in 0..n {
            for x in 0..n {
                let a = id(y, x);
                src[a.0] = ObjId(x);
                tgt[a.0] = ObjId(y);
                inv[a.0] = id(x, y);
            }
            unit[y] = id(y, y);
        }
        let mut mul = vec![None; n_arr * n_arr];
        for y in 0..n {
            for x in 0..n {
                for z in 0..n {
                    // (y,x)·(x,z) = (y,z)
                    mul[id(y, x).0 * n_arr + id(x, z).0] = Some(id(y, z));
                }
            }
        }
        Self {
            n_objects: n,
            src,
            tgt,
            unit,
            inv,
            mul,
        }
    }

    /// A group, viewed as a groupoid over a single object.
    pub fn group(table: &GroupTable) -> Result<Self> {
        table.check()?;
        let k = table.order();
        let e = table.identity();
        let mut mul = vec![None; k * k];
        for a in 0..k {
            for b in 0..k {
                mul[a * k + b] = Some(ArrId(table.product(a, b)));
            }
        }
        Ok(Self {
            n_objects: 1,
            src: vec![ObjId(0); k],
            tgt: vec![ObjId(0); k],
            unit: vec![ArrId(e)],
            inv: (0..k).map(|a| ArrId(table.inverse(a))).collect(),
            mul,
        })
    }

    /// Trivial group bundle: `n` disjoint copies of the group, one over each
    /// object, with `α = β` the base point.
    pub fn group_bundle(table: &GroupTable, n: usize) -> Result<Self> {
        table.check()?;
        let k = table.order();
        let e = table.identity();
        let id = |m: usize, a: usize| ArrId(m * k + a);
        let n_arr = n * k;
        let mut src = vec![ObjId(0); n_arr];
        let mut tgt = vec![ObjId(0); n_arr];
        let mut inv = vec![ArrId(0); n_arr];
        let mut unit = vec![ArrId(0); n];
        let mut mul = vec![None; n_arr * n_arr];
        for m in 0..n {
            unit[m] = id(m, e);
            for a in 0..k {
                let g = id(m, a);
                src[g.0] = ObjId(m);
                tgt[g.0] = ObjId(m);
                inv[g.0] = id(m, table.inverse(a));
                for b in 0..k {
                    mul[g.0 * n_arr + id(m, b).0] = Some(id(m, table.product(a, b)));
                }
            }
        }
        Ok(Self {
            n_objects: n,
            src,
            tgt,
            unit,
            inv,
            mul,
        })
    }

    /// Action groupoid `K ⋉ M` of a left action: arrows are pairs `(k, m)`
    /// with `α(k,m) = m` and `β(k,m) = k·m`.
    pub fn action(table: &GroupTable, action: &ActionTable) -> Result<Self> {
        table.check()?;
        action.check(table)?;
        let k_ord = table.order();
        let n = action.n_points();
        let e = table.identity();
        let id = |k: usize, m: usize| ArrId(k * n + m);
        let n_arr = k_ord * n;
        let mut src = vec![ObjId(0); n_arr];
        let mut tgt = vec![ObjId(0); n_arr];
        let mut inv = vec![ArrId(0); n_arr];
        let mut unit = vec![ArrId(0); n];
        for m in 0..n {
            unit[m] = id(e, m);
        }
        for k in 0..k_ord {
            for m in 0..n {
                let g = id(k, m);
                src[g.0] = ObjId(m);
                tgt[g.0] = ObjId(action.apply(k, m));
                inv[g.0] = id(table.inverse(k), action.apply(k, m));
            }
        }
        let mut mul = vec![None; n_arr * n_arr];
        for k1 in 0..k_ord {
            for k2 in 0..k_ord {
                for m in 0..n {
                    // (k1, k2·m)·(k2, m) = (k1k2, m)
                    let h = id(k2, m);
                    let g = id(k1, action.apply(k2, m));
                    mul[g.0 * n_arr + h.0] = Some(id(table.product(k1, k2), m));
                }
            }
        }
        Ok(Self {
            n_objects: n,
            src,
            tgt,
            unit,
            inv,
            mul,
        })
    }

    /// Partition of the objects into connected components (objects joined by
    /// an arrow in either direction).
    pub fn components(&self) -> Vec<Vec<ObjId>> {
        let mut seen = vec![false; self.n_objects];
        let mut out = Vec::new();
        for start in self.objects() {
            if seen[start.0] {
                continue;
            }
            let mut comp = vec![start];
            seen[start.0] = true;
            let mut queue = vec![start];
            while let Some(m) = queue.pop() {
                for g in self.arrows() {
                    let (a, b) = (self.src(g), self.tgt(g));
                    for other in [a, b] {
                        if (a == m || b == m) && !seen[other.0] {
                            seen[other.0] = true;
                            comp.push(other);
                            queue.push(other);
                        }
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// The isotropy group at `m`: all arrows `m → m`, in index order.
    pub fn isotropy(&self, m: ObjId) -> Vec<ArrId> {
        self.arrows()
            .filter(|&g| self.src(g) == m && self.tgt(g) == m)
            .collect()
    }
}

/// Searches for a relabelling isomorphism between two finite groupoids:
/// bijections of objects and arrows commuting with all structure maps.
/// Brute force over object permutations with per-hom-set arrow matching;
/// intended for small test fixtures only.
pub fn find_relabeling_isomorphism(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if a.n_objects() != b.n_objects() || a.n_arrows() != b.n_arrows() {
        return None;
    }
    let n = a.n_objects();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if let Some(arr_map) = match_arrows(a, b, &perm) {
            return Some((perm, arr_map));
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn match_arrows(a: &FiniteGroupoid, b: &FiniteGroupoid, obj_map: &[usize]) -> Option<Vec<usize>> {
    let n_arr = a.n_arrows();
    let mut arr_map = vec![usize::MAX; n_arr];
    let mut used = vec![false; n_arr];
    fn extend(
        a: &FiniteGroupoid,
        b: &FiniteGroupoid,
        obj_map: &[usize],
        g: usize,
        arr_map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if g == a.n_arrows() {
            // All structure maps must commute with the candidate bijection.
            for x in a.arrows() {
                if b.inverse(ArrId(arr_map[x.0])) != ArrId(arr_map[a.inverse(x).0]) {
                    return false;
                }
                for y in a.arrows() {
                    let lhs = a.compose_opt(x, y).map(|z| arr_map[z.0]);
                    let rhs = b
                        .compose_opt(ArrId(arr_map[x.0]), ArrId(arr_map[y.0]))
                        .map(|z| z.0);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
            for m in a.objects() {
                if arr_map[a.unit(m).0] != b.unit(ObjId(obj_map[m.0])).0 {
                    return false;
                }
            }
            return true;
        }
        let ga = ArrId(g);
        for h in b.arrows() {
            if used[h.0]
                || b.src(h).0 != obj_map[a.src(ga).0]
                || b.tgt(h).0 != obj_map[a.tgt(ga).0]
            {
                continue;
            }
            arr_map[g] = h.0;
            used[h.0] = true;
            if extend(a, b, obj_map, g + 1, arr_map, used) {
                return true;
            }
            used[h.0] = false;
            arr_map[g] = usize::MAX;
        }
        false
    }
    if extend(a, b, obj_map, 0, &mut arr_map, &mut used) {
        Some(arr_map)
    } else {
        None
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// A finite group given by its Cayley table, `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Builds and fully verifies a Cayley table: closure, associativity,
    /// two-sided identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let k = table.len();
        if k == 0 {
            return Err(Error::MalformedTable("empty Cayley table".into()));
        }
        if table.iter().any(|row| row.len() != k) {
            return Err(Error::MalformedTable("Cayley table is not square".into()));
        }
        if table.iter().flatten().any(|&v| v >= k) {
            return Err(Error::MalformedTable("Cayley table entry out of range".into()));
        }
        let identity = (0..k)
            .find(|&e| (0..k).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::MalformedTable("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; k];
        for a in 0..k {
            inverse[a] = (0..k)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::MalformedTable(format!("element {a} has no inverse")))?;
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::MalformedTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            table,
            identity,
            inverse,
        })
    }

    fn check(&self) -> Result<()> {
        // Invariants were established in `new`; nothing can invalidate them.
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// The cyclic group ℤ/n with 0 as identity.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(table).expect("cyclic table is a group")
    }
}

/// A left action of a group on points, `table[k][m] = k·m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    table: Vec<Vec<usize>>,
}

impl ActionTable {
    pub fn new(table: Vec<Vec<usize>>) -> Self {
        Self { table }
    }

    pub fn n_points(&self) -> usize {
        self.table.first().map_or(0, Vec::len)
    }

    pub fn apply(&self, k: usize, m: usize) -> usize {
        self.table[k][m]
    }

    /// Verifies the action axioms against a group table: `e·m = m` and
    /// `(k1k2)·m = k1·(k2·m)`.
    pub fn check(&self, group: &GroupTable) -> Result<()> {
        let k_ord = group.order();
        if self.table.len() != k_ord {
            return Err(Error::MalformedTable(format!(
                "action table has {} rows, group has order {}",
                self.table.len(),
                k_ord
            )));
        }
        let n = self.n_points();
        if n == 0 {
            return Err(Error::MalformedTable("action on zero points".into()));
        }
        if self.table.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedTable("ragged action table".into()));
        }
        if self.table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::MalformedTable("action entry out of range".into()));
        }
        let e = group.identity();
        for m in 0..n {
            if self.apply(e, m) != m {
                return Err(Error::MalformedTable(format!("identity moves point {m}")));
            }
        }
        for k1 in 0..k_ord {
            for k2 in 0..k_ord {
                for m in 0..n {
                    if self.apply(group.product(k1, k2), m) != self.apply(k1, self.apply(k2, m)) {
                        return Err(Error::MalformedTable(format!(
                            "action not compatible at ({k1}, {k2}, {m})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
