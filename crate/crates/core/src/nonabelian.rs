//! Finite groups given by multiplication tables: commutator subgroups,
//! perfectness, abelianization in invariant-factor form, and the characters
//! of a finite group obtained through its abelianization.
//!
//! For a finite group the commutator subgroup is already closed, so the
//! quotient by it is the full abelian quotient that characters factor through.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num_integer::Integer;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::factorize;
use crate::circle::UnitRational;
use crate::error::{Error, Result};

/// Largest group order accepted by the subgroup computations.
pub const SIZE_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a Cayley table, checking the group axioms.
    /// Associativity is checked exhaustively up to order 64 and on a
    /// deterministic sample above that.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > SIZE_LIMIT {
            return Err(Error::SizeLimit { order: n, limit: SIZE_LIMIT });
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidGroup("table is not closed".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
            inverses.push(inv);
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidGroup("table is not associative".into()));
                        }
                    }
                }
            }
        } else {
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            let mut next = || {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                (s % n as u64) as usize
            };
            for _ in 0..20_000 {
                let (a, b, c) = (next(), next(), next());
                if !assoc(a, b, c) {
                    return Err(Error::InvalidGroup("table is not associative".into()));
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            table,
            identity,
            inverses,
        })
    }

    /// Closure of permutation generators (0-based images). Elements are listed
    /// in breadth-first order from the identity.
    pub fn from_permutations(name: impl Into<String>, generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.first().map_or(1, Vec::len);
        for g in generators {
            let mut seen = g.clone();
            seen.sort_unstable();
            if g.len() != degree || seen != (0..degree).collect::<Vec<_>>() {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                // (x * g)(k) = g(x(k)): apply x first, then g
                let prod: Vec<usize> = elements[i].iter().map(|&k| g[k]).collect();
                if !index.contains_key(&prod) {
                    if elements.len() >= SIZE_LIMIT {
                        return Err(Error::SizeLimit { order: elements.len() + 1, limit: SIZE_LIMIT });
                    }
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        let table = elements
            .iter()
            .map(|x| {
                elements
                    .iter()
                    .map(|y| index[&x.iter().map(|&k| y[k]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Self::from_table(name, table)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(format!("C{n}"), table).expect("cyclic table")
    }

    /// `C_m x| C_n` where the generator of `C_n` acts on `C_m` by multiplication by `r`.
    pub fn semidirect_cyclic(name: impl Into<String>, m: usize, n: usize, r: usize) -> Result<Self> {
        let pow = |k: usize| (0..k).fold(1usize, |acc, _| acc * r % m);
        if pow(n) % m != 1 % m || r.gcd(&m) != 1 {
            return Err(Error::InvalidGroup("action is not an automorphism of order dividing n".into()));
        }
        let idx = |i: usize, j: usize| i * n + j;
        let mut table = vec![vec![0; m * n]; m * n];
        for i1 in 0..m {
            for j1 in 0..n {
                for i2 in 0..m {
                    for j2 in 0..n {
                        table[idx(i1, j1)][idx(i2, j2)] = idx((i1 + pow(j1) * i2) % m, (j1 + j2) % n);
                    }
                }
            }
        }
        Self::from_table(name, table)
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        Self::semidirect_cyclic(format!("D{n}"), n, 2, n - 1).expect("dihedral table")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = vec![];
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|k| (k + 1) % n).collect());
        } else {
            gens.push(vec![0]);
        }
        Self::from_permutations(format!("S{n}"), &gens).expect("symmetric group")
    }

    pub fn alternating(n: usize) -> Self {
        let gens: Vec<Vec<usize>> = if n < 3 {
            vec![(0..n.max(1)).collect()]
        } else {
            // 3-cycles (0 1 k) generate A_n
            (2..n)
                .map(|k| {
                    let mut p: Vec<usize> = (0..n).collect();
                    p[0] = 1;
                    p[1] = k;
                    p[k] = 0;
                    p
                })
                .collect()
        };
        Self::from_permutations(format!("A{n}"), &gens).expect("alternating group")
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // element = (sign, unit) with unit in {1, i, j, k} = {0, 1, 2, 3}
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let idx = |neg: bool, u: usize| u * 2 + neg as usize;
        let mut table = vec![vec![0; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let (sa, ua) = (a % 2 == 1, a / 2);
                let (sb, ub) = (b % 2 == 1, b / 2);
                let (s, u) = unit_mul(ua, ub);
                table[a][b] = idx(sa ^ sb ^ s, u);
            }
        }
        Self::from_table("Q8", table).expect("quaternion table")
    }

    /// `SL(2, 3)`, order 24.
    pub fn sl2_3() -> Self {
        type M = [u8; 4];
        let mul = |a: &M, b: &M| -> M {
            [
                (a[0] * b[0] + a[1] * b[2]) % 3,
                (a[0] * b[1] + a[1] * b[3]) % 3,
                (a[2] * b[0] + a[3] * b[2]) % 3,
                (a[2] * b[1] + a[3] * b[3]) % 3,
            ]
        };
        let mut elems: Vec<M> = Vec::new();
        for a in 0..3u8 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        if (a * d + 3 * 3 - (b * c) % 3) % 3 == 1 {
                            elems.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let pos: HashMap<M, usize> = elems.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let table = elems
            .iter()
            .map(|x| elems.iter().map(|y| pos[&mul(x, y)]).collect())
            .collect();
        Self::from_table("SL(2,3)", table).expect("SL(2,3) table")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (n, m) = (a.order(), b.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_table(format!("{}x{}", a.name, b.name), table).expect("product table")
    }

    /// Built-in groups by name: `A5`, `S3`, `Q8`, `C<n>`, `D<n>`, `A<n>`, `S<n>`, `SL23`.
    pub fn builtin(name: &str) -> Result<Self> {
        let unknown = || Error::InvalidArgument(format!("unknown finite group {name:?}"));
        match name {
            "Q8" => return Ok(Self::quaternion()),
            "SL23" | "SL(2,3)" => return Ok(Self::sl2_3()),
            _ => {}
        }
        let (head, tail) = name.split_at(1.min(name.len()));
        let n: usize = tail.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        match head {
            "C" => Ok(Self::cyclic(n)),
            "D" if n >= 2 => Ok(Self::dihedral(n)),
            "S" if n <= 6 => Ok(Self::symmetric(n)),
            "A" if n <= 6 => Ok(Self::alternating(n)),
            _ => Err(unknown()),
        }
    }

    /// Loads `{"order": n, "table": [[...]]}` or `{"generators": [[...]]}`
    /// (0-based permutation images); `"name"` is optional.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct File {
            name: Option<String>,
            order: Option<usize>,
            table: Option<Vec<Vec<usize>>>,
            generators: Option<Vec<Vec<usize>>>,
        }
        let f: File = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let name = f.name.unwrap_or_else(|| "custom".into());
        match (f.table, f.generators) {
            (Some(table), None) => {
                if let Some(order) = f.order {
                    if order != table.len() {
                        return Err(Error::InvalidGroup(format!(
                            "order {order} does not match table size {}",
                            table.len()
                        )));
                    }
                }
                Self::from_table(name, table)
            }
            (None, Some(gens)) => {
                let g = Self::from_permutations(name, &gens)?;
                match f.order {
                    Some(order) if order != g.order() => Err(Error::InvalidGroup(format!(
                        "declared order {order}, generated {}",
                        g.order()
                    ))),
                    _ => Ok(g),
                }
            }
            _ => Err(Error::Parse("expected exactly one of \"table\" or \"generators\"".into())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let (ai, bi) = (self.inverse(a), self.inverse(b));
        self.mul(self.mul(ai, bi), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn generated_subgroup(&self, gens: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let gens: Vec<usize> = gens.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for x in 0..self.order() {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.generated_subgroup(gens.iter().copied());
            }
        }
        gens
    }
}

/// The commutator subgroup, as a sorted index list.
pub fn derived_subgroup(f: &FiniteGroup) -> Result<Vec<usize>> {
    if f.order() > SIZE_LIMIT {
        return Err(Error::SizeLimit { order: f.order(), limit: SIZE_LIMIT });
    }
    let n = f.order();
    let mut comms = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            comms.insert(f.commutator(a, b));
        }
    }
    Ok(f.generated_subgroup(comms))
}

pub fn is_perfect(f: &FiniteGroup) -> Result<bool> {
    Ok(derived_subgroup(f)?.len() == f.order())
}

/// The abelian quotient `F / F'` in invariant-factor form `n_1 | n_2 | ... | n_k`
/// together with the coordinates of every element of `F` in `Z/n_1 x ... x Z/n_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianDesc {
    factors: Vec<u64>,
    coords: Vec<Vec<u64>>,
}

impl FiniteAbelianDesc {
    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Image of element `x` of the source group.
    pub fn project(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    /// All character parameter tuples, lexicographic with the trivial one first.
    pub fn characters(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &n in &self.factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..n).map(move |k| {
                        let mut v = prefix.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Value of the character with parameters `ks` at element `x` of the source group.
    pub fn eval(&self, ks: &[u64], x: usize) -> UnitRational {
        self.factors
            .iter()
            .zip(ks)
            .zip(self.project(x))
            .fold(UnitRational::ZERO, |acc, ((&n, &k), &c)| {
                acc.add(UnitRational::new((k as i128) * (c as i128), n))
            })
    }
}

pub fn abelianization(f: &FiniteGroup) -> Result<FiniteAbelianDesc> {
    let derived = derived_subgroup(f)?;
    let n = f.order();
    // coset labels
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if coset[g] == usize::MAX {
            let id = reps.len();
            reps.push(g);
            for &k in &derived {
                coset[f.mul(g, k)] = id;
            }
        }
    }
    let q = reps.len();
    let qtable: Vec<Vec<usize>> = (0..q)
        .map(|a| (0..q).map(|b| coset[f.mul(reps[a], reps[b])]).collect())
        .collect();
    let qzero = coset[f.identity()];
    let (factors, gens) = decompose_abelian(&qtable, qzero)?;

    // coordinates of every quotient element
    let mut qcoords: Vec<Option<Vec<u64>>> = vec![None; q];
    let mut tuple = vec![0u64; factors.len()];
    loop {
        let mut x = qzero;
        for (g, &c) in gens.iter().zip(&tuple) {
            for _ in 0..c {
                x = qtable[x][*g];
            }
        }
        if qcoords[x].is_some() {
            return Err(Error::InvariantViolated("abelian basis is not independent".into()));
        }
        qcoords[x] = Some(tuple.clone());
        // odometer
        let mut i = 0;
        while i < tuple.len() {
            tuple[i] += 1;
            if tuple[i] < factors[i] {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == tuple.len() {
            break;
        }
    }
    let coords = (0..n)
        .map(|g| qcoords[coset[g]].clone().expect("basis spans the quotient"))
        .collect();
    Ok(FiniteAbelianDesc { factors, coords })
}

/// Invariant factors and matching generators of a finite abelian group table.
///
/// Each Sylow subgroup is split greedily: an element of maximal order modulo
/// the span found so far is corrected by that span so its order equals its
/// order in the quotient, which makes the new cyclic factor a direct summand.
fn decompose_abelian(table: &[Vec<usize>], zero: usize) -> Result<(Vec<u64>, Vec<usize>)> {
    let q = table.len();
    let mul_k = |x: usize, k: u64| (0..k).fold(zero, |acc, _| table[acc][x]);
    let order = |x: usize| -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != zero {
            y = table[y][x];
            k += 1;
        }
        k
    };
    // per prime: list of (generator, order p^s), orders decreasing
    let mut primary: Vec<(u64, Vec<(usize, u64)>)> = Vec::new();
    for (p, _) in factorize(q as u64) {
        let sylow: Vec<usize> = (0..q)
            .filter(|&x| factorize(order(x)).iter().all(|&(r, _)| r == p))
            .collect();
        let mut basis: Vec<(usize, u64)> = Vec::new();
        // span element -> coordinates
        let mut span: HashMap<usize, Vec<u64>> = HashMap::from([(zero, vec![])]);
        while span.len() < sylow.len() {
            let quotient_order = |x: usize| -> u64 {
                let mut k = 1;
                let mut y = x;
                while !span.contains_key(&y) {
                    y = table[y][x];
                    k += 1;
                }
                k
            };
            let (x, s) = sylow
                .iter()
                .map(|&x| (x, quotient_order(x)))
                .max_by_key(|&(x, k)| (k, std::cmp::Reverse(x)))
                .unwrap();
            let px = mul_k(x, s);
            let c = &span[&px];
            let mut corrected = x;
            for (&(g, _), &ci) in basis.iter().zip(c) {
                if ci % s != 0 {
                    return Err(Error::InvariantViolated("sylow split failed".into()));
                }
                let g_ord = order(g);
                let back = mul_k(g, (g_ord - (ci / s) % g_ord) % g_ord);
                corrected = table[corrected][back];
            }
            if order(corrected) != s {
                return Err(Error::InvariantViolated("corrected generator has wrong order".into()));
            }
            basis.push((corrected, s));
            let mut next = HashMap::new();
            for (y, cy) in &span {
                let mut z = *y;
                for t in 0..s {
                    let mut cz = cy.clone();
                    cz.push(t);
                    next.insert(z, cz);
                    z = table[z][corrected];
                }
            }
            span = next;
        }
        primary.push((p, basis));
    }
    let k = primary.iter().map(|(_, b)| b.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; k];
    let mut gens = vec![zero; k];
    for (_, basis) in &primary {
        // largest orders go to the last (largest) invariant factor
        for (i, &(g, s)) in basis.iter().enumerate() {
            let slot = k - 1 - i;
            factors[slot] *= s;
            gens[slot] = table[gens[slot]][g];
        }
    }
    Ok((factors, gens))
}

/// Number of homomorphisms `F -> T`, by exhaustive search over images of a
/// generating set in `(1/|F|)Z/Z`, which contains every such image.
pub fn count_homomorphisms_to_circle(f: &FiniteGroup) -> u64 {
    let n = f.order();
    let gens = f.generating_set();
    let mut count = 0;
    let mut assignment = vec![0usize; gens.len()];
    loop {
        if extends_to_hom(f, &gens, &assignment) {
            count += 1;
        }
        let mut i = 0;
        while i < assignment.len() {
            assignment[i] += 1;
            if assignment[i] < n {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
        if i == assignment.len() {
            break;
        }
    }
    count
}

fn extends_to_hom(f: &FiniteGroup, gens: &[usize], values: &[usize]) -> bool {
    let n = f.order();
    let mut image = vec![usize::MAX; n];
    image[f.identity()] = 0;
    let mut queue = VecDeque::from([f.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&g, &vg) in gens.iter().zip(values) {
            let y = f.mul(x, g);
            let vy = (image[x] + vg) % n;
            if image[y] == usize::MAX {
                image[y] = vy;
                queue.push_back(y);
            } else if image[y] != vy {
                return false;
            }
        }
    }
    true
}

/// A finite group factor with its abelianization precomputed.
#[derive(Clone, Debug)]
pub struct FiniteFactor {
    group: Arc<FiniteGroup>,
    abelian: Arc<FiniteAbelianDesc>,
}

impl FiniteFactor {
    pub fn new(group: FiniteGroup) -> Result<Self> {
        let abelian = abelianization(&group)?;
        Ok(FiniteFactor {
            group: Arc::new(group),
            abelian: Arc::new(abelian),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn abelianization(&self) -> &FiniteAbelianDesc {
        &self.abelian
    }
}

impl PartialEq for FiniteFactor {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
    }
}

impl Serialize for FiniteFactor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("name", self.group.name())?;
        map.serialize_entry("order", &self.group.order())?;
        map.serialize_entry("abelianization", self.abelian.invariant_factors())?;
        map.end()
    }
}

/// Groups of order at most 24 used to cross-check the abelianization.
pub fn small_group_library() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (1..=24).map(FiniteGroup::cyclic).collect();
    out.extend((2..=12).map(FiniteGroup::dihedral));
    out.push(FiniteGroup::symmetric(3));
    out.push(FiniteGroup::symmetric(4));
    out.push(FiniteGroup::alternating(4));
    out.push(FiniteGroup::quaternion());
    out.push(FiniteGroup::sl2_3());
    for (name, m, n, r) in [
        ("Dic3", 3, 4, 2),
        ("C5:C4", 5, 4, 2),
        ("C7:C3", 7, 3, 2),
        ("C3:C8", 3, 8, 2),
        ("C5:C4'", 5, 4, 4),
    ] {
        out.push(FiniteGroup::semidirect_cyclic(name, m, n, r).unwrap());
    }
    let c2 = FiniteGroup::cyclic(2);
    let c3 = FiniteGroup::cyclic(3);
    let c4 = FiniteGroup::cyclic(4);
    let c6 = FiniteGroup::cyclic(6);
    out.push(FiniteGroup::direct_product(&c2, &c2));
    out.push(FiniteGroup::direct_product(&c2, &c4));
    out.push(FiniteGroup::direct_product(&FiniteGroup::direct_product(&c2, &c2), &c2));
    out.push(FiniteGroup::direct_product(&c3, &c3));
    out.push(FiniteGroup::direct_product(&c2, &c6));
    out.push(FiniteGroup::direct_product(&c4, &c4));
    out.push(FiniteGroup::direct_product(&c2, &FiniteGroup::dihedral(4)));
    out.push(FiniteGroup::direct_product(&c2, &FiniteGroup::quaternion()));
    out.push(FiniteGroup::direct_product(&c3, &FiniteGroup::symmetric(3)));
    out.push(FiniteGroup::direct_product(&c2, &FiniteGroup::alternating(4)));
    out.push(FiniteGroup::direct_product(&c4, &FiniteGroup::symmetric(3)));
    out.push(FiniteGroup::direct_product(&c2, &FiniteGroup::semidirect_cyclic("Dic3", 3, 4, 2).unwrap()));
    out.retain(|g| g.order() <= 24);
    out
}
