//! Rings given by structure constants on a finitely generated abelian group,
//! finite monoids with anti-involution, and the quotients built from them.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fgab::{
    bilinear_pairs, direct_sum, invariants_and_coinvariants, quotient, tensor, Element, FgAbGroup,
    GroupHom, InvariantsCoinvariants, Tensor,
};
use crate::matrix::{Int, IntMatrix};

/// A unital ring whose additive group is `carrier`. `mul[i][j]` is the product
/// of canonical generators `i` and `j`. The optional `w` is an anti-involution.
#[derive(Clone, Debug)]
pub struct PresRing {
    carrier: FgAbGroup,
    mul: Vec<Vec<Element>>,
    unit: Element,
    w: Option<GroupHom>,
}

impl PresRing {
    /// Checks that every product is killed by the orders of both factors.
    pub fn new(
        carrier: FgAbGroup,
        mul: Vec<Vec<Element>>,
        unit: Element,
        w: Option<GroupHom>,
    ) -> Result<Self> {
        let n = carrier.ngens();
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("multiplication table must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let p = &mul[i][j];
                for d in [carrier.modulus(i), carrier.modulus(j)] {
                    if !d.is_zero() && !carrier.is_zero(&carrier.scale(d, p)) {
                        return Err(Error::InvalidRing(format!(
                            "product of generators {i} and {j} is not killed by {d}"
                        )));
                    }
                }
            }
        }
        if let Some(w) = &w {
            if !w.source().same_type(&carrier) || !w.target().same_type(&carrier) {
                return Err(Error::Shape("involution must be an endomorphism of the carrier".into()));
            }
        }
        Ok(Self {
            carrier,
            mul,
            unit,
            w,
        })
    }

    /// Builds a ring from data on the user generators of `carrier`: `mul_user[i][j]`
    /// and `unit_user` are user coordinates, `w_user` a user-basis matrix.
    pub fn from_user(
        carrier: FgAbGroup,
        mul_user: &[Vec<Vec<Int>>],
        unit_user: &[Int],
        w_user: Option<&IntMatrix>,
    ) -> Result<Self> {
        let pres = carrier.presentation().clone();
        let u = pres.generators();
        if mul_user.len() != u || mul_user.iter().any(|r| r.len() != u || r.iter().any(|c| c.len() != u)) {
            return Err(Error::Shape(format!("user multiplication table must be {u}x{u}x{u}")));
        }
        if unit_user.len() != u {
            return Err(Error::Shape("unit has the wrong length".into()));
        }
        // Bilinearity on relations: r * g_j and g_j * r must vanish.
        let prod_user = |a: &[Int], b: &[Int]| -> Vec<Int> {
            let mut out = vec![Int::zero(); u];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let k = x * y;
                    for (o, c) in out.iter_mut().zip(&mul_user[i][j]) {
                        *o += &k * c;
                    }
                }
            }
            out
        };
        let basis = |j: usize| {
            let mut v = vec![Int::zero(); u];
            v[j] = Int::one();
            v
        };
        for (r, row) in pres.relations().row_iter().enumerate() {
            for j in 0..u {
                let left = carrier.from_user(&prod_user(row, &basis(j)));
                let right = carrier.from_user(&prod_user(&basis(j), row));
                if !carrier.is_zero(&left) || !carrier.is_zero(&right) {
                    return Err(Error::InvalidRing(format!(
                        "multiplication does not respect relation {r}"
                    )));
                }
            }
        }
        let n = carrier.ngens();
        let canon: Vec<Vec<Int>> = (0..n).map(|i| pres.from_canonical().column(i)).collect();
        let mul = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| carrier.from_user(&prod_user(&canon[i], &canon[j])))
                    .collect()
            })
            .collect();
        let unit = carrier.from_user(unit_user);
        let w = w_user
            .map(|m| GroupHom::from_user_matrix(&carrier, &carrier, m))
            .transpose()?;
        Self::new(carrier, mul, unit, w)
    }

    pub fn carrier(&self) -> &FgAbGroup {
        &self.carrier
    }

    pub fn ngens(&self) -> usize {
        self.carrier.ngens()
    }

    pub fn table(&self, i: usize, j: usize) -> &Element {
        &self.mul[i][j]
    }

    pub fn one(&self) -> Element {
        self.unit.clone()
    }

    pub fn zero(&self) -> Element {
        self.carrier.zero()
    }

    pub fn gen(&self, i: usize) -> Element {
        self.carrier.generator(i)
    }

    pub fn involution(&self) -> Option<&GroupHom> {
        self.w.as_ref()
    }

    pub fn with_involution(mut self, w: Option<GroupHom>) -> Self {
        self.w = w;
        self
    }

    pub fn apply_w(&self, a: &Element) -> Element {
        match &self.w {
            Some(w) => w.apply(a),
            None => a.clone(),
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.carrier.add(a, b)
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.carrier.sub(a, b)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let n = self.ngens();
        let mut acc = vec![Int::zero(); n];
        for (i, x) in a.coords().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords().iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = x * y;
                for (o, c) in acc.iter_mut().zip(self.mul[i][j].coords()) {
                    *o += &k * c;
                }
            }
        }
        self.carrier.element(acc)
    }

    pub fn mul3(&self, a: &Element, b: &Element, c: &Element) -> Element {
        self.mul(&self.mul(a, b), c)
    }

    pub fn pow(&self, a: &Element, e: u32) -> Element {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn from_int(&self, n: &Int) -> Element {
        self.carrier.scale(n, &self.unit)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.ngens()).all(|i| (0..i).all(|j| self.mul[i][j] == self.mul[j][i]))
    }

    /// Whether `h: self → other` is a unital ring map on generators.
    pub fn is_ring_map(&self, other: &PresRing, h: &GroupHom) -> bool {
        if h.apply(&self.one()) != other.one() {
            return false;
        }
        (0..self.ngens()).all(|i| {
            (0..self.ngens()).all(|j| {
                h.apply(&self.mul[i][j]) == other.mul(&h.apply(&self.gen(i)), &h.apply(&self.gen(j)))
            })
        })
    }
}

/// A law violation, with the generator tuple that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: &str, witness: String) {
        self.violations.push(Violation {
            law: law.to_string(),
            witness,
        });
    }

    /// Records one violation per law at most.
    pub fn push_once(&mut self, law: &str, witness: String) {
        if !self.has(law) {
            self.push(law, witness);
        }
    }

    pub fn has(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }
}

pub const LAW_ASSOC: &str = "associativity";
pub const LAW_UNIT: &str = "unit";
pub const LAW_W_SQUARE: &str = "w^2 = id";
pub const LAW_W_UNIT: &str = "w(1) = 1";
pub const LAW_W_ANTI: &str = "w(ab) = w(b)w(a)";
pub const LAW_W_HOM: &str = "w(ab) = w(a)w(b)";

pub fn validate_ring(r: &PresRing) -> Report {
    let mut rep = validate_ring_laws(r);
    if let Some(w) = r.involution() {
        rep.extend(check_involution(r, w, true));
    }
    rep
}

/// Associativity on generator triples and the unit law on generators.
pub fn validate_ring_laws(r: &PresRing) -> Report {
    let mut rep = Report::default();
    let n = r.ngens();
    for i in 0..n {
        let g = r.gen(i);
        if r.mul(&r.one(), &g) != g || r.mul(&g, &r.one()) != g {
            rep.push_once(LAW_UNIT, format!("generator {i}"));
        }
        for j in 0..n {
            for k in 0..n {
                let lhs = r.mul(&r.mul[i][j], &r.gen(k));
                let rhs = r.mul(&g, &r.mul[j][k]);
                if lhs != rhs {
                    rep.push_once(LAW_ASSOC, format!("generators ({i}, {j}, {k})"));
                }
            }
        }
    }
    rep
}

/// Checks that `w` is an involution fixing 1 that reverses (`anti`) or preserves products.
pub fn check_involution(r: &PresRing, w: &GroupHom, anti: bool) -> Report {
    let mut rep = Report::default();
    let n = r.ngens();
    if !w.compose(w).equals(&GroupHom::identity(r.carrier())) {
        rep.push(LAW_W_SQUARE, "w ∘ w ≠ id".into());
    }
    if w.apply(&r.one()) != r.one() {
        rep.push(LAW_W_UNIT, r.carrier().format_element(&w.apply(&r.one())));
    }
    let law = if anti { LAW_W_ANTI } else { LAW_W_HOM };
    for i in 0..n {
        for j in 0..n {
            let (wi, wj) = (w.apply(&r.gen(i)), w.apply(&r.gen(j)));
            let expected = if anti { r.mul(&wj, &wi) } else { r.mul(&wi, &wj) };
            if w.apply(&r.mul[i][j]) != expected {
                rep.push_once(law, format!("generators ({i}, {j})"));
            }
        }
    }
    rep
}

/// The additive quotient `R / [R, R]` with its projection and induced involution.
#[derive(Clone, Debug)]
pub struct CommutatorQuotient {
    pub group: FgAbGroup,
    pub projection: GroupHom,
    pub involution: Option<GroupHom>,
}

pub fn commutator_quotient(r: &PresRing) -> Result<CommutatorQuotient> {
    let n = r.ngens();
    let mut comms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = r.sub(&r.mul[i][j], &r.mul[j][i]);
            if !r.carrier().is_zero(&c) {
                comms.push(c);
            }
        }
    }
    let (group, projection) = quotient(r.carrier(), &comms);
    let involution = r
        .involution()
        .map(|w| w.descend(&projection, &projection))
        .transpose()?;
    Ok(CommutatorQuotient {
        group,
        projection,
        involution,
    })
}

/// `S ⊗ S` with factorwise multiplication and the flip automorphism.
#[derive(Clone, Debug)]
pub struct FlipSquare {
    pub tensor: Tensor,
    pub ring: PresRing,
    pub tau: GroupHom,
    pub fixed: InvariantsCoinvariants,
}

pub fn flip_square(s: &PresRing) -> Result<FlipSquare> {
    let t = tensor(s.carrier(), s.carrier());
    let n = s.ngens();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let mul_user: Vec<Vec<Vec<Int>>> = pairs
        .iter()
        .map(|&(i, j)| {
            pairs
                .iter()
                .map(|&(k, l)| bilinear_pairs(s.table(i, k), s.table(j, l)))
                .collect()
        })
        .collect();
    let unit = bilinear_pairs(&s.one(), &s.one());
    let ring = PresRing::from_user(t.group.clone(), &mul_user, &unit, None)?;
    let images: Vec<Element> = pairs.iter().map(|&(i, j)| t.table(j, i)).collect();
    let tau = GroupHom::from_user_images(&t.group, &t.group, &images)?;
    let fixed = invariants_and_coinvariants(&t.group, &tau)?;
    Ok(FlipSquare {
        tensor: t,
        ring,
        tau,
        fixed,
    })
}

/// A finite monoid with anti-involution `iota`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMonoid {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    iota: Vec<usize>,
    identity: usize,
}

impl FinMonoid {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, iota: Vec<usize>, identity: usize) -> Result<Self> {
        let n = names.len();
        let bad = |m: &str| Err(Error::InvalidMonoid(m.to_string()));
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table must be a square array of element indices");
        }
        if iota.len() != n || iota.iter().any(|&x| x >= n) || identity >= n {
            return bad("anti-involution or identity out of range");
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return bad(&format!("identity law fails at {}", names[a]));
            }
            if iota[iota[a]] != a {
                return bad(&format!("iota is not an involution at {}", names[a]));
            }
            for b in 0..n {
                if iota[table[a][b]] != table[iota[b]][iota[a]] {
                    return bad(&format!("iota does not reverse {} * {}", names[a], names[b]));
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(&format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        ));
                    }
                }
            }
        }
        Ok(Self {
            names,
            table,
            iota,
            identity,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn iota(&self, a: usize) -> usize {
        self.iota[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.table[a][b] == self.identity && self.table[b][a] == self.identity)
    }

    pub fn is_group(&self) -> bool {
        (0..self.len()).all(|a| self.inverse(a).is_some())
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n = <g>` with the inversion involution.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let iota = (0..n).map(|a| (n - a) % n).collect();
        Self::new(names, table, iota, 0).expect("cyclic groups are valid")
    }

    /// Product monoid with the componentwise involution, elements ordered `(a, b)` lexicographically.
    pub fn product(&self, other: &FinMonoid) -> Self {
        let (n, m) = (self.len(), other.len());
        let idx = |a: usize, b: usize| a * m + b;
        let mut names = Vec::with_capacity(n * m);
        let mut table = vec![vec![0; n * m]; n * m];
        let mut iota = vec![0; n * m];
        for a in 0..n {
            for b in 0..m {
                names.push(format!("({},{})", self.names[a], other.names[b]));
                iota[idx(a, b)] = idx(self.iota[a], other.iota[b]);
                for c in 0..n {
                    for d in 0..m {
                        table[idx(a, b)][idx(c, d)] = idx(self.table[a][c], other.table[b][d]);
                    }
                }
            }
        }
        Self::new(names, table, iota, idx(self.identity, other.identity))
            .expect("products of valid monoids are valid")
    }

    /// The group generated by permutations of `{0, .., degree-1}` (composition `(pq)(x) = p(q(x))`),
    /// with the inversion involution.
    pub fn permutation_group(degree: usize, generators: &[Vec<usize>]) -> Self {
        let id: Vec<usize> = (0..degree).collect();
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
        let mut elems = vec![id.clone()];
        let mut frontier = vec![id.clone()];
        while let Some(p) = frontier.pop() {
            for g in generators {
                let q = compose(g, &p);
                if !elems.contains(&q) {
                    elems.push(q.clone());
                    frontier.push(q);
                }
            }
        }
        elems[1..].sort();
        Self::from_group_elements(&elems, |p, q| compose(p, q), |p| {
            p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
        })
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}` with inversion.
    pub fn quaternion() -> Self {
        // (sign, unit) with unit 0 = 1, 1 = i, 2 = j, 3 = k
        let mut elems = Vec::new();
        for u in 0..4u8 {
            for s in [1i8, -1] {
                elems.push((s, u));
            }
        }
        let mul = |a: &(i8, u8), b: &(i8, u8)| -> (i8, u8) {
            let (s, u) = match (a.1, b.1) {
                (0, x) | (x, 0) => (1, x),
                (x, y) if x == y => (-1, 0),
                (1, 2) => (1, 3),
                (2, 3) => (1, 1),
                (3, 1) => (1, 2),
                (2, 1) => (-1, 3),
                (3, 2) => (-1, 1),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            };
            (a.0 * b.0 * s, u)
        };
        Self::from_group_elements(&elems, mul, |&(s, u)| {
            let unit = ["1", "i", "j", "k"][u as usize];
            if s < 0 {
                format!("-{unit}")
            } else {
                unit.to_string()
            }
        })
    }

    /// Builds a group from a closed list of elements (identity first) with inversion as involution.
    pub fn from_group_elements<T: PartialEq>(
        elems: &[T],
        mul: impl Fn(&T, &T) -> T,
        name: impl Fn(&T) -> String,
    ) -> Self {
        let n = elems.len();
        let index = |x: &T| elems.iter().position(|e| e == x).expect("element list is closed");
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| index(&mul(&elems[a], &elems[b]))).collect())
            .collect();
        let iota = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("group elements have inverses"))
            .collect();
        Self::new(elems.iter().map(name).collect(), table, iota, 0).expect("groups are valid monoids")
    }

    /// Same monoid with the identity as involution; valid only for commutative monoids.
    pub fn with_trivial_involution(&self) -> Result<Self> {
        Self::new(
            self.names.clone(),
            self.table.clone(),
            (0..self.len()).collect(),
            self.identity,
        )
    }
}

/// Names accepted by [`group_by_name`].
pub const GROUP_NAMES: &[&str] = &[
    "trivial", "c2", "c3", "c4", "c2xc2", "c5", "s3", "c6", "c7", "c8", "c4xc2", "c2^3", "d4", "q8",
];

/// Built-in groups of order at most 8, each with the inversion involution.
pub fn group_by_name(name: &str) -> Option<FinMonoid> {
    let g = match name.to_ascii_lowercase().as_str() {
        "trivial" | "c1" => FinMonoid::trivial(),
        "c2" => FinMonoid::cyclic(2),
        "c3" => FinMonoid::cyclic(3),
        "c4" => FinMonoid::cyclic(4),
        "c5" => FinMonoid::cyclic(5),
        "c6" => FinMonoid::cyclic(6),
        "c7" => FinMonoid::cyclic(7),
        "c8" => FinMonoid::cyclic(8),
        "c2xc2" => FinMonoid::cyclic(2).product(&FinMonoid::cyclic(2)),
        "c4xc2" => FinMonoid::cyclic(4).product(&FinMonoid::cyclic(2)),
        "c2^3" => FinMonoid::cyclic(2)
            .product(&FinMonoid::cyclic(2))
            .product(&FinMonoid::cyclic(2)),
        "s3" => FinMonoid::permutation_group(3, &[vec![1, 0, 2], vec![1, 2, 0]]),
        "d4" => FinMonoid::permutation_group(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]),
        "q8" => FinMonoid::quaternion(),
        _ => return None,
    };
    Some(g)
}

/// `R[M]` with basis `r_i m` ordered `m`-major, and anti-involution `r m ↦ w(r) ι(m)`.
pub fn monoid_ring(r: &PresRing, m: &FinMonoid) -> Result<PresRing> {
    let nr = r.ngens();
    let nm = m.len();
    let copies = vec![r.carrier().clone(); nm];
    let carrier = direct_sum(&copies).group;
    let u = nm * nr;
    let embed = |g: usize, x: &Element| -> Vec<Int> {
        let mut v = vec![Int::zero(); u];
        for (i, c) in x.coords().iter().enumerate() {
            v[g * nr + i] = c.clone();
        }
        v
    };
    let mul_user: Vec<Vec<Vec<Int>>> = (0..u)
        .map(|a| {
            let (ga, ia) = (a / nr, a % nr);
            (0..u)
                .map(|b| {
                    let (gb, ib) = (b / nr, b % nr);
                    embed(m.mul(ga, gb), r.table(ia, ib))
                })
                .collect()
        })
        .collect();
    let unit = embed(m.identity(), &r.one());
    // A missing involution on R is read as the identity.
    let cols: Vec<Vec<Int>> = (0..u)
        .map(|a| {
            let (g, i) = (a / nr, a % nr);
            embed(m.iota(g), &r.apply_w(&r.gen(i)))
        })
        .collect();
    let w = IntMatrix::from_columns(u, &cols);
    PresRing::from_user(carrier, &mul_user, &unit, Some(&w))
}

pub fn integers() -> PresRing {
    zmod(0)
}

/// `Z/n` (`n = 0` gives `Z`) with the trivial involution.
pub fn zmod(n: i64) -> PresRing {
    let carrier = FgAbGroup::cyclic(n);
    if carrier.is_trivial() {
        return PresRing::new(carrier.clone(), vec![], carrier.zero(), Some(GroupHom::identity(&carrier)))
            .expect("zero ring");
    }
    let one = carrier.generator(0);
    PresRing::new(
        carrier.clone(),
        vec![vec![one.clone()]],
        one,
        Some(GroupHom::identity(&carrier)),
    )
    .expect("Z/n is a ring")
}

/// `Z[i]/(i^2 + 1)` with complex conjugation.
pub fn gaussian_integers() -> PresRing {
    let carrier = FgAbGroup::free(2);
    let v = |a: i64, b: i64| vec![Int::from(a), Int::from(b)];
    let mul = vec![vec![v(1, 0), v(0, 1)], vec![v(0, 1), v(-1, 0)]];
    let w = IntMatrix::from_i64(2, &[&[1, 0], &[0, -1]]);
    PresRing::from_user(carrier, &mul, &v(1, 0), Some(&w)).expect("Z[i] is a ring")
}

/// `M_2(Z)` on the matrix units `E11, E12, E21, E22`, with transposition.
pub fn matrix_ring_m2() -> PresRing {
    let carrier = FgAbGroup::free(4);
    let unit_vec = |k: usize| {
        let mut v = vec![Int::zero(); 4];
        v[k] = Int::one();
        v
    };
    let idx = |r: usize, c: usize| 2 * r + c;
    let mul: Vec<Vec<Vec<Int>>> = (0..4)
        .map(|a| {
            (0..4)
                .map(|b| {
                    let (r1, c1, r2, c2) = (a / 2, a % 2, b / 2, b % 2);
                    if c1 == r2 {
                        unit_vec(idx(r1, c2))
                    } else {
                        vec![Int::zero(); 4]
                    }
                })
                .collect()
        })
        .collect();
    let unit: Vec<Int> = [1, 0, 0, 1].iter().map(|&x| Int::from(x)).collect();
    let transpose = IntMatrix::from_i64(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
    PresRing::from_user(carrier, &mul, &unit, Some(&transpose)).expect("M_2(Z) is a ring")
}

/// Conjugation classes of a monoid: the equivalence closure of `mn ~ nm`.
pub fn conjugation_classes(m: &FinMonoid) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut uf = UnionFind::new(n);
    for a in 0..n {
        for b in 0..n {
            uf.union(m.mul(a, b), m.mul(b, a));
        }
    }
    uf.classes()
}

/// Disjoint-set forest over `0..n`.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Classes sorted by their smallest member, members ascending.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.parent.len() {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    #[test]
    fn standard_rings_validate() {
        for r in [integers(), zmod(2), zmod(6), gaussian_integers(), matrix_ring_m2()] {
            let rep = validate_ring(&r);
            assert!(rep.is_valid(), "{rep:?}");
        }
    }

    #[test]
    fn unit_violation_reported() {
        // g*g = g on Z, with the unit declared as 2g
        let carrier = FgAbGroup::free(1);
        let r = PresRing::from_user(carrier, &[vec![vec![int(1)]]], &[int(2)], None).unwrap();
        let rep = validate_ring(&r);
        assert!(rep.has(LAW_UNIT));
    }

    #[test]
    fn ill_defined_multiplication_rejected() {
        // Z/2 with 1*1 declared as a generator of order 4 is fine; on Z/4 with products of order 4 from an order 2 generator is not
        let carrier = FgAbGroup::from_invariants(0, &[int(2), int(4)]);
        let mut mul = vec![vec![vec![int(0), int(0)]; 2]; 2];
        mul[0][0] = vec![int(0), int(1)];
        assert!(PresRing::from_user(carrier, &mul, &[int(0), int(1)], None).is_err());
    }

    #[test]
    fn commutator_quotients() {
        let z = integers();
        let cq = commutator_quotient(&z).unwrap();
        assert!(cq.projection.is_isomorphism());
        let m2 = matrix_ring_m2();
        let cq = commutator_quotient(&m2).unwrap();
        assert_eq!((cq.group.free_rank(), cq.group.torsion().len()), (1, 0));
        let zs3 = monoid_ring(&integers(), &group_by_name("s3").unwrap()).unwrap();
        let cq = commutator_quotient(&zs3).unwrap();
        assert_eq!((cq.group.free_rank(), cq.group.torsion().len()), (3, 0));
    }

    #[test]
    fn monoid_rings() {
        let r = monoid_ring(&integers(), &FinMonoid::trivial()).unwrap();
        assert_eq!(r.carrier().free_rank(), 1);
        let zc2 = monoid_ring(&integers(), &FinMonoid::cyclic(2)).unwrap();
        assert!(validate_ring(&zc2).is_valid());
        assert!(zc2.involution().unwrap().equals(&GroupHom::identity(zc2.carrier())));
        let f2c3 = monoid_ring(&zmod(2), &FinMonoid::cyclic(3)).unwrap();
        assert!(validate_ring(&f2c3).is_valid());
        assert_eq!(f2c3.carrier().elementary_rank(2), Some(3));
        let w = f2c3.involution().unwrap();
        let g = f2c3.carrier().user_generator(1);
        assert_eq!(w.apply(&g), f2c3.carrier().user_generator(2));
    }

    #[test]
    fn flip_square_of_group_ring() {
        let zc2 = monoid_ring(&integers(), &FinMonoid::cyclic(2)).unwrap();
        let fs = flip_square(&zc2).unwrap();
        assert_eq!(fs.tensor.group.free_rank(), 4);
        let t = &fs.tensor;
        assert_eq!(fs.tau.apply(&t.table(0, 1)), t.table(1, 0));
        assert_eq!(fs.tau.apply(&t.table(0, 0)), t.table(0, 0));
        assert!(check_involution(&fs.ring, &fs.tau, false).is_valid());
        let fs = flip_square(&zmod(2)).unwrap();
        assert!(fs.tau.equals(&GroupHom::identity(&fs.tensor.group)));
    }

    #[test]
    fn catalog_groups() {
        let orders: Vec<usize> = GROUP_NAMES.iter().map(|n| group_by_name(n).unwrap().len()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]);
        for n in GROUP_NAMES {
            assert!(group_by_name(n).unwrap().is_group());
        }
        assert_eq!(conjugation_classes(&group_by_name("s3").unwrap()).len(), 3);
        assert_eq!(conjugation_classes(&group_by_name("d4").unwrap()).len(), 5);
        assert_eq!(conjugation_classes(&group_by_name("q8").unwrap()).len(), 5);
    }
}
