//! Finitely generated abelian groups, their elements and homomorphisms.
//!
//! Every [`FgAbGroup`] is stored in invariant-factor form: canonical generators
//! `c_1, ..., c_k` of orders `d_1 | d_2 | ... | d_k` (each `d_i >= 2`) followed
//! by `free_rank` free generators. Elements are coordinate vectors over the
//! canonical generators with torsion coordinates reduced into `[0, d_i)`, so
//! equality of elements is equality of coordinates.
//!
//! A group also remembers the presentation it was built from (the "user"
//! generators and relations) together with the basis change in both
//! directions. Constructions such as quotients and box products name their
//! generators in the user basis and convert through the presentation.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Int, IntMatrix};
use crate::snf::{integer_nullspace, smith_normal_form, solve_integer};

/// A group element, as coordinates over the canonical generators of some group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<Int>);

impl Element {
    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The presentation a group was built from, with the basis change to canonical form.
#[derive(Clone, Debug)]
pub struct Presentation {
    generators: usize,
    relations: IntMatrix,
    /// `ncanon x generators`: column `j` holds the canonical coordinates of user generator `j`.
    /// With `U R V = D` this is `V^T` restricted to the surviving indices.
    to_canonical: IntMatrix,
    /// `generators x ncanon`: column `i` expresses canonical generator `i` in user generators.
    from_canonical: IntMatrix,
}

impl Presentation {
    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn to_canonical(&self) -> &IntMatrix {
        &self.to_canonical
    }

    pub fn from_canonical(&self) -> &IntMatrix {
        &self.from_canonical
    }
}

#[derive(Clone, Debug)]
pub struct FgAbGroup {
    /// Modulus of each canonical generator; `0` marks a free generator.
    moduli: Vec<Int>,
    torsion_count: usize,
    presentation: Presentation,
}

/// Presents the group `Z^generators / rowspace(relations)` in invariant-factor form.
pub fn canonicalize(generators: usize, relations: &IntMatrix) -> FgAbGroup {
    assert_eq!(
        relations.cols(),
        generators,
        "relation matrix width must equal the generator count"
    );
    let snf = smith_normal_form(relations);
    let mut torsion_idx = Vec::new();
    let mut free_idx = Vec::new();
    for j in 0..generators {
        match snf.diagonal.get(j) {
            Some(d) if d.is_one() => {}
            Some(d) if !d.is_zero() => torsion_idx.push(j),
            _ => free_idx.push(j),
        }
    }
    let order: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();
    let moduli: Vec<Int> = order
        .iter()
        .map(|&j| snf.diagonal.get(j).cloned().unwrap_or_default())
        .collect();
    let mut to_canonical = IntMatrix::zeros(order.len(), generators);
    for (row, &j) in order.iter().enumerate() {
        for col in 0..generators {
            let mut v = snf.right[(col, j)].clone();
            if !moduli[row].is_zero() {
                v = v.mod_floor(&moduli[row]);
            }
            to_canonical[(row, col)] = v;
        }
    }
    let cols: Vec<Vec<Int>> = order.iter().map(|&j| snf.right_inv.row_vec(j)).collect();
    let from_canonical = IntMatrix::from_columns(generators, &cols);
    FgAbGroup {
        moduli,
        torsion_count: torsion_idx.len(),
        presentation: Presentation {
            generators,
            relations: relations.clone(),
            to_canonical,
            from_canonical,
        },
    }
}

impl FgAbGroup {
    pub fn presented(generators: usize, relations: &IntMatrix) -> Self {
        canonicalize(generators, relations)
    }

    /// `Z^free_rank ⊕ Z/t_1 ⊕ ...`; the torsion list need not be in canonical form.
    pub fn from_invariants(free_rank: usize, torsion: &[Int]) -> Self {
        let n = torsion.len() + free_rank;
        let rows = torsion
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut row = vec![Int::zero(); n];
                row[i] = d.clone();
                row
            })
            .collect();
        canonicalize(n, &IntMatrix::from_rows(n, rows))
    }

    pub fn free(rank: usize) -> Self {
        Self::from_invariants(rank, &[])
    }

    pub fn cyclic(order: i64) -> Self {
        if order == 0 {
            Self::free(1)
        } else {
            Self::from_invariants(0, &[Int::from(order)])
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn ngens(&self) -> usize {
        self.moduli.len()
    }

    pub fn torsion(&self) -> &[Int] {
        &self.moduli[..self.torsion_count]
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.len() - self.torsion_count
    }

    /// Order of canonical generator `i`, or `0` when it is free.
    pub fn modulus(&self, i: usize) -> &Int {
        &self.moduli[i]
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn user_generators(&self) -> usize {
        self.presentation.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn order(&self) -> Option<Int> {
        self.is_finite()
            .then(|| self.torsion().iter().fold(Int::one(), |acc, d| acc * d))
    }

    /// Same invariant factors and free rank.
    pub fn same_type(&self, other: &FgAbGroup) -> bool {
        self.moduli == other.moduli
    }

    /// Whether the group is an elementary abelian `p`-group; returns its rank if so.
    pub fn elementary_rank(&self, p: u64) -> Option<usize> {
        let p = Int::from(p);
        (self.is_finite() && self.torsion().iter().all(|d| *d == p)).then(|| self.ngens())
    }

    pub fn reduce(&self, coords: &mut [Int]) {
        assert_eq!(coords.len(), self.ngens(), "coordinate length mismatch");
        for (c, m) in coords.iter_mut().zip(&self.moduli) {
            if !m.is_zero() {
                *c = c.mod_floor(m);
            }
        }
    }

    pub fn element(&self, mut coords: Vec<Int>) -> Element {
        self.reduce(&mut coords);
        Element(coords)
    }

    pub fn element_i64(&self, coords: &[i64]) -> Element {
        self.element(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(&self) -> Element {
        Element(vec![Int::zero(); self.ngens()])
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut c = vec![Int::zero(); self.ngens()];
        c[i] = Int::one();
        self.element(c)
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.ngens()).map(|i| self.generator(i)).collect()
    }

    pub fn is_zero(&self, x: &Element) -> bool {
        x.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.element(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.element(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.element(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, k: &Int, a: &Element) -> Element {
        self.element(a.0.iter().map(|x| x * k).collect())
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Element {
        let mut acc = vec![Int::zero(); self.ngens()];
        for x in items {
            for (a, v) in acc.iter_mut().zip(&x.0) {
                *a += v;
            }
        }
        self.element(acc)
    }

    /// Integer combination `sum_i coeffs[i] * items[i]`.
    pub fn combination(&self, coeffs: &[Int], items: &[Element]) -> Element {
        let mut acc = vec![Int::zero(); self.ngens()];
        for (k, x) in coeffs.iter().zip(items) {
            if k.is_zero() {
                continue;
            }
            for (a, v) in acc.iter_mut().zip(&x.0) {
                *a += k * v;
            }
        }
        self.element(acc)
    }

    /// Element named by coordinates over the user generators of the presentation.
    pub fn from_user(&self, user_coords: &[Int]) -> Element {
        self.element(self.presentation.to_canonical.mul_vec(user_coords))
    }

    pub fn user_generator(&self, j: usize) -> Element {
        self.element(self.presentation.to_canonical.column(j))
    }

    /// One representative of `x` in user coordinates.
    pub fn to_user(&self, x: &Element) -> Vec<Int> {
        self.presentation.from_canonical.mul_vec(&x.0)
    }

    /// Order of `x`, or `None` when it has infinite order.
    pub fn element_order(&self, x: &Element) -> Option<Int> {
        let mut order = Int::one();
        for (c, m) in x.0.iter().zip(&self.moduli) {
            if c.is_zero() {
                continue;
            }
            if m.is_zero() {
                return None;
            }
            let o = m / c.gcd(m);
            order = order.lcm(&o);
        }
        Some(order)
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    pub fn elements(&self) -> Option<Vec<Element>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::<Int>::new()];
        for m in &self.moduli {
            let bound = m.clone();
            let mut next = Vec::new();
            for prefix in &out {
                let mut v = Int::zero();
                while v < bound {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    next.push(p);
                    v += 1;
                }
            }
            out = next;
        }
        Some(out.into_iter().map(Element).collect())
    }

    pub fn format_element(&self, x: &Element) -> String {
        let parts: Vec<String> = x.0.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in self.torsion() {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// A homomorphism, stored as a matrix on canonical generators: column `j`
/// holds the (reduced) image of canonical generator `j` of the source.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: &FgAbGroup, target: &FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::Shape(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let images: Vec<Element> = (0..source.ngens())
            .map(|j| target.element(matrix.column(j)))
            .collect();
        Self::from_images(source, target, images)
    }

    /// Hom sending canonical generator `j` of `source` to `images[j]`.
    pub fn from_images(source: &FgAbGroup, target: &FgAbGroup, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.ngens() {
            return Err(Error::Shape(format!(
                "{} images for {} generators",
                images.len(),
                source.ngens()
            )));
        }
        for (j, img) in images.iter().enumerate() {
            let d = source.modulus(j);
            if !d.is_zero() && !target.is_zero(&target.scale(d, img)) {
                return Err(Error::IllDefinedHom(format!(
                    "generator {j} has order {d} but its image {} does not",
                    target.format_element(img)
                )));
            }
        }
        let cols: Vec<Vec<Int>> = images.into_iter().map(Element::into_coords).collect();
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::from_columns(target.ngens(), &cols),
        })
    }

    /// Hom sending user generator `j` of the source presentation to `images[j]`.
    /// Every source relation must map to zero.
    pub fn from_user_images(
        source: &FgAbGroup,
        target: &FgAbGroup,
        images: &[Element],
    ) -> Result<Self> {
        let pres = source.presentation();
        if images.len() != pres.generators {
            return Err(Error::Shape(format!(
                "{} images for {} user generators",
                images.len(),
                pres.generators
            )));
        }
        for (r, row) in pres.relations.row_iter().enumerate() {
            let img = target.combination(row, images);
            if !target.is_zero(&img) {
                return Err(Error::IllDefinedHom(format!(
                    "relation {r} maps to {}",
                    target.format_element(&img)
                )));
            }
        }
        let canon_images = (0..source.ngens())
            .map(|i| target.combination(&pres.from_canonical.column(i), images))
            .collect();
        Self::from_images(source, target, canon_images)
    }

    /// Hom given by a matrix on user generators of both presentations.
    pub fn from_user_matrix(source: &FgAbGroup, target: &FgAbGroup, matrix: &IntMatrix) -> Result<Self> {
        if matrix.rows() != target.user_generators() || matrix.cols() != source.user_generators() {
            return Err(Error::Shape(format!(
                "user hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.user_generators(),
                source.user_generators()
            )));
        }
        let images: Vec<Element> = (0..matrix.cols())
            .map(|j| target.from_user(&matrix.column(j)))
            .collect();
        Self::from_user_images(source, target, &images)
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        Self {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    /// Multiplication by an integer.
    pub fn scalar(g: &FgAbGroup, k: i64) -> Self {
        let images = g.generators().iter().map(|x| g.scale(&Int::from(k), x)).collect();
        Self::from_images(g, g, images).expect("scalar maps are well defined")
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn image_of_generator(&self, j: usize) -> Element {
        Element(self.matrix.column(j))
    }

    pub fn apply(&self, x: &Element) -> Element {
        self.target.element(self.matrix.mul_vec(x.coords()))
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &GroupHom) -> GroupHom {
        assert!(
            inner.target.same_type(&self.source),
            "composition of incompatible homomorphisms"
        );
        let images = (0..inner.source.ngens())
            .map(|j| self.apply(&inner.image_of_generator(j)))
            .collect();
        GroupHom::from_images(&inner.source, &self.target, images).expect("composite is well defined")
    }

    fn pointwise(&self, other: &GroupHom, f: impl Fn(&Element, &Element) -> Element) -> GroupHom {
        assert!(self.source.same_type(&other.source) && self.target.same_type(&other.target));
        let images = (0..self.source.ngens())
            .map(|j| f(&self.image_of_generator(j), &other.image_of_generator(j)))
            .collect();
        GroupHom::from_images(&self.source, &self.target, images).expect("sum of homs is well defined")
    }

    pub fn add(&self, other: &GroupHom) -> GroupHom {
        self.pointwise(other, |a, b| self.target.add(a, b))
    }

    pub fn sub(&self, other: &GroupHom) -> GroupHom {
        self.pointwise(other, |a, b| self.target.sub(a, b))
    }

    pub fn neg(&self) -> GroupHom {
        let images = (0..self.source.ngens())
            .map(|j| self.target.neg(&self.image_of_generator(j)))
            .collect();
        GroupHom::from_images(&self.source, &self.target, images).expect("negation is well defined")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Equality as maps; both matrices are reduced, so this is matrix equality.
    pub fn equals(&self, other: &GroupHom) -> bool {
        self.source.same_type(&other.source)
            && self.target.same_type(&other.target)
            && self.matrix == other.matrix
    }

    /// Some `x` with `self(x) = y`.
    pub fn preimage(&self, y: &Element) -> Option<Element> {
        let (m, n) = (self.source.ngens(), self.target.ngens());
        let torsion: Vec<usize> = (0..n).filter(|&k| !self.target.modulus(k).is_zero()).collect();
        let mut system = IntMatrix::zeros(n, m + torsion.len());
        for i in 0..n {
            for j in 0..m {
                system[(i, j)] = self.matrix[(i, j)].clone();
            }
        }
        for (c, &k) in torsion.iter().enumerate() {
            system[(k, m + c)] = self.target.modulus(k).clone();
        }
        let sol = solve_integer(&system, y.coords())?;
        Some(self.source.element(sol[..m].to_vec()))
    }

    pub fn kernel(&self) -> (FgAbGroup, GroupHom) {
        let (m, n) = (self.source.ngens(), self.target.ngens());
        let torsion: Vec<usize> = (0..n).filter(|&k| !self.target.modulus(k).is_zero()).collect();
        let mut system = IntMatrix::zeros(n, m + torsion.len());
        for i in 0..n {
            for j in 0..m {
                system[(i, j)] = self.matrix[(i, j)].clone();
            }
        }
        for (c, &k) in torsion.iter().enumerate() {
            system[(k, m + c)] = self.target.modulus(k).clone();
        }
        let null = integer_nullspace(&system);
        let gens: Vec<Element> = (0..null.cols())
            .map(|c| self.source.element((0..m).map(|i| null[(i, c)].clone()).collect()))
            .collect();
        subgroup_generated(&self.source, &gens)
    }

    pub fn image(&self) -> (FgAbGroup, GroupHom) {
        let gens: Vec<Element> = (0..self.source.ngens()).map(|j| self.image_of_generator(j)).collect();
        subgroup_generated(&self.target, &gens)
    }

    pub fn cokernel(&self) -> (FgAbGroup, GroupHom) {
        let gens: Vec<Element> = (0..self.source.ngens()).map(|j| self.image_of_generator(j)).collect();
        quotient(&self.target, &gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// The map induced on quotients `source/… → target/…` along two projections.
    pub fn descend(&self, source_proj: &GroupHom, target_proj: &GroupHom) -> Result<GroupHom> {
        let q_src = source_proj.target();
        let images = (0..q_src.ngens())
            .map(|i| {
                let lift = source_proj
                    .preimage(&q_src.generator(i))
                    .ok_or_else(|| Error::IllDefinedHom("projection is not surjective".into()))?;
                Ok(target_proj.apply(&self.apply(&lift)))
            })
            .collect::<Result<Vec<_>>>()?;
        let induced = GroupHom::from_images(q_src, target_proj.target(), images)?;
        // The quotient kernel must land in the target kernel.
        let (_, ker) = source_proj.kernel();
        let check = target_proj.compose(self).compose(&ker);
        if !check.is_zero() {
            return Err(Error::IllDefinedHom(
                "map does not descend to the quotients".into(),
            ));
        }
        Ok(induced)
    }
}

/// The subgroup of `a` generated by `gens`, with its inclusion.
pub fn subgroup_generated(a: &FgAbGroup, gens: &[Element]) -> (FgAbGroup, GroupHom) {
    let k = gens.len();
    let m = a.ngens();
    let torsion: Vec<usize> = (0..m).filter(|&i| !a.modulus(i).is_zero()).collect();
    let mut system = IntMatrix::zeros(m, k + torsion.len());
    for (j, g) in gens.iter().enumerate() {
        for i in 0..m {
            system[(i, j)] = g.coords()[i].clone();
        }
    }
    for (c, &i) in torsion.iter().enumerate() {
        system[(i, k + c)] = a.modulus(i).clone();
    }
    let null = integer_nullspace(&system);
    let rows = (0..null.cols())
        .map(|c| (0..k).map(|j| null[(j, c)].clone()).collect())
        .collect();
    let sub = canonicalize(k, &IntMatrix::from_rows(k, rows));
    let incl = GroupHom::from_user_images(&sub, a, gens).expect("relations among generators hold");
    (sub, incl)
}

/// `a / <elems>` with its projection; the quotient's user generators are the
/// canonical generators of `a`.
pub fn quotient(a: &FgAbGroup, elems: &[Element]) -> (FgAbGroup, GroupHom) {
    let m = a.ngens();
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(m + elems.len());
    for i in 0..m {
        if !a.modulus(i).is_zero() {
            let mut r = vec![Int::zero(); m];
            r[i] = a.modulus(i).clone();
            rows.push(r);
        }
    }
    rows.extend(elems.iter().map(|e| e.coords().to_vec()));
    let q = canonicalize(m, &IntMatrix::from_rows(m, rows));
    let proj = GroupHom::new(a, &q, q.presentation().to_canonical().clone())
        .expect("projection onto a quotient is well defined");
    (q, proj)
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgAbGroup,
    pub injections: Vec<GroupHom>,
    pub projections: Vec<GroupHom>,
}

pub fn direct_sum(parts: &[FgAbGroup]) -> DirectSum {
    let n: usize = parts.iter().map(FgAbGroup::ngens).sum();
    let mut rows = Vec::new();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut off = 0;
    for p in parts {
        offsets.push(off);
        for i in 0..p.ngens() {
            if !p.modulus(i).is_zero() {
                let mut r = vec![Int::zero(); n];
                r[off + i] = p.modulus(i).clone();
                rows.push(r);
            }
        }
        off += p.ngens();
    }
    let group = canonicalize(n, &IntMatrix::from_rows(n, rows));
    let injections = parts
        .iter()
        .zip(&offsets)
        .map(|(p, &o)| {
            let images: Vec<Element> = (0..p.ngens()).map(|i| group.user_generator(o + i)).collect();
            GroupHom::from_images(p, &group, images).expect("injection is well defined")
        })
        .collect();
    let projections = parts
        .iter()
        .zip(&offsets)
        .map(|(p, &o)| {
            let images: Vec<Element> = (0..n)
                .map(|u| {
                    if u >= o && u < o + p.ngens() {
                        p.generator(u - o)
                    } else {
                        p.zero()
                    }
                })
                .collect();
            GroupHom::from_user_images(&group, p, &images).expect("projection is well defined")
        })
        .collect();
    DirectSum {
        group,
        injections,
        projections,
    }
}

/// A tensor product `A ⊗ B` presented on the elementary tensors of canonical generators,
/// ordered lexicographically `(i, j)`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub group: FgAbGroup,
    left: FgAbGroup,
    right: FgAbGroup,
}

impl Tensor {
    pub fn left(&self) -> &FgAbGroup {
        &self.left
    }

    pub fn right(&self) -> &FgAbGroup {
        &self.right
    }

    /// Coefficient expansion of `a_i ⊗ b_j`.
    pub fn table(&self, i: usize, j: usize) -> Element {
        self.group.user_generator(i * self.right.ngens() + j)
    }

    /// `a ⊗ b` in user coordinates (the pair basis).
    pub fn pair_user_coords(&self, a: &Element, b: &Element) -> Vec<Int> {
        bilinear_pairs(a, b)
    }

    pub fn pair(&self, a: &Element, b: &Element) -> Element {
        self.group.from_user(&self.pair_user_coords(a, b))
    }
}

/// Coefficients of `a ⊗ b` on the lexicographic pair basis.
pub fn bilinear_pairs(a: &Element, b: &Element) -> Vec<Int> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a.coords() {
        for y in b.coords() {
            out.push(x * y);
        }
    }
    out
}

pub fn tensor(a: &FgAbGroup, b: &FgAbGroup) -> Tensor {
    let (na, nb) = (a.ngens(), b.ngens());
    let n = na * nb;
    let mut rows = Vec::new();
    for i in 0..na {
        for j in 0..nb {
            let g = a.modulus(i).gcd(b.modulus(j));
            if !g.is_zero() {
                let mut r = vec![Int::zero(); n];
                r[i * nb + j] = g;
                rows.push(r);
            }
        }
    }
    Tensor {
        group: canonicalize(n, &IntMatrix::from_rows(n, rows)),
        left: a.clone(),
        right: b.clone(),
    }
}

/// `Tor_1(A, B)` from the two-term free resolution `0 → Z^t → Z^m → A → 0` of `A`.
pub fn tor1(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    tor1_with_resolution(&Resolution::canonical(a), b)
}

/// A two-term free resolution `Z^rank1 --boundary--> Z^rank0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub rank0: usize,
    pub rank1: usize,
    /// `rank0 x rank1`
    pub boundary: IntMatrix,
}

impl Resolution {
    pub fn canonical(a: &FgAbGroup) -> Self {
        let m = a.ngens();
        let t = a.torsion().len();
        let mut boundary = IntMatrix::zeros(m, t);
        for i in 0..t {
            boundary[(i, i)] = a.modulus(i).clone();
        }
        Resolution {
            rank0: m,
            rank1: t,
            boundary,
        }
    }

    /// The canonical resolution padded with a redundant free summand `Z --1--> Z`.
    pub fn padded(a: &FgAbGroup) -> Self {
        let c = Self::canonical(a);
        let mut boundary = IntMatrix::zeros(c.rank0 + 1, c.rank1 + 1);
        for i in 0..c.rank0 {
            for j in 0..c.rank1 {
                boundary[(i, j)] = c.boundary[(i, j)].clone();
            }
        }
        boundary[(c.rank0, c.rank1)] = Int::one();
        Resolution {
            rank0: c.rank0 + 1,
            rank1: c.rank1 + 1,
            boundary,
        }
    }

    /// The resolved group, `coker(boundary)`.
    pub fn resolved(&self) -> FgAbGroup {
        canonicalize(self.rank0, &self.boundary.transpose())
    }

    /// The map `B^rank1 → B^rank0` obtained by tensoring with `b`.
    pub fn tensored(&self, b: &FgAbGroup) -> GroupHom {
        let f1 = direct_sum(&vec![b.clone(); self.rank1]).group;
        let f0 = direct_sum(&vec![b.clone(); self.rank0]).group;
        let nb = b.ngens();
        let mut images = Vec::with_capacity(self.rank1 * nb);
        for j in 0..self.rank1 {
            for k in 0..nb {
                let mut coords = vec![Int::zero(); self.rank0 * nb];
                for i in 0..self.rank0 {
                    coords[i * nb + k] = self.boundary[(i, j)].clone();
                }
                images.push(f0.from_user(&coords));
            }
        }
        GroupHom::from_user_images(&f1, &f0, &images).expect("tensored boundary is well defined")
    }
}

pub fn tor1_with_resolution(res: &Resolution, b: &FgAbGroup) -> FgAbGroup {
    res.tensored(b).kernel().0
}

pub fn tor0_with_resolution(res: &Resolution, b: &FgAbGroup) -> FgAbGroup {
    res.tensored(b).cokernel().0
}

/// Invariants, coinvariants and the additive norm of an involution.
#[derive(Clone, Debug)]
pub struct InvariantsCoinvariants {
    pub invariants: FgAbGroup,
    pub inclusion: GroupHom,
    pub coinvariants: FgAbGroup,
    pub projection: GroupHom,
    /// `[a] ↦ a + t(a)`, from coinvariants to invariants.
    pub norm: GroupHom,
}

pub fn invariants_and_coinvariants(a: &FgAbGroup, t: &GroupHom) -> Result<InvariantsCoinvariants> {
    if !t.compose(t).equals(&GroupHom::identity(a)) {
        return Err(Error::NotInvolution("t ∘ t ≠ id".into()));
    }
    let t_minus = t.sub(&GroupHom::identity(a));
    let (invariants, inclusion) = t_minus.kernel();
    let (coinvariants, projection) = t_minus.cokernel();
    let one_plus = t.add(&GroupHom::identity(a));
    let images = (0..coinvariants.ngens())
        .map(|i| {
            let lift = projection
                .preimage(&coinvariants.generator(i))
                .expect("coinvariant projection is surjective");
            let fixed = one_plus.apply(&lift);
            inclusion
                .preimage(&fixed)
                .ok_or_else(|| Error::NotInvolution("a + t(a) is not invariant".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let norm = GroupHom::from_images(&coinvariants, &invariants, images)?;
    Ok(InvariantsCoinvariants {
        invariants,
        inclusion,
        coinvariants,
        projection,
        norm,
    })
}

/// Invariant factors of a finite abelian group from counts of `p^j`-torsion
/// elements. Used as an enumeration oracle independent of Smith normal form.
pub fn invariant_factors_from_torsion_counts(order: u64, count_killed_by: impl Fn(u64) -> u64) -> Vec<Int> {
    let mut per_prime: Vec<Vec<u32>> = Vec::new();
    let mut primes = Vec::new();
    let mut n = order;
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            primes.push(p);
        }
        p += 1;
    }
    for &p in &primes {
        // log_p |G[p^j]| for j = 0, 1, ... until it stabilises.
        let mut logs = vec![0u32];
        let mut pj = 1u64;
        loop {
            pj *= p;
            let c = count_killed_by(pj);
            let mut l = 0;
            let mut c2 = c;
            while c2 > 1 {
                c2 /= p;
                l += 1;
            }
            if l == *logs.last().unwrap() {
                break;
            }
            logs.push(l);
        }
        // Number of cyclic factors of order >= p^j is logs[j] - logs[j-1].
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let factors = at_least.first().copied().unwrap_or(0) as usize;
        let mut exps = vec![0u32; factors];
        for (e, k) in exps.iter_mut().enumerate() {
            *k = at_least.iter().filter(|&&c| c as usize > e).count() as u32;
        }
        // exps is descending
        per_prime.push(exps);
    }
    let longest = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors = Vec::with_capacity(longest);
    for k in 0..longest {
        let mut d = Int::one();
        for (p, exps) in primes.iter().zip(&per_prime) {
            if let Some(&e) = exps.get(k) {
                d *= Int::from(*p).pow(e);
            }
        }
        factors.push(d);
    }
    factors.reverse();
    factors
}

/// Brute-force invariant factors of a finite group given by its elements and addition.
pub fn invariant_factors_by_enumeration<T: Clone + PartialEq>(
    elements: &[T],
    zero: &T,
    add: impl Fn(&T, &T) -> T,
) -> Vec<Int> {
    let multiple = |x: &T, k: u64| {
        let mut acc = zero.clone();
        for _ in 0..k {
            acc = add(&acc, x);
        }
        acc
    };
    invariant_factors_from_torsion_counts(elements.len() as u64, |m| {
        elements.iter().filter(|x| multiple(x, m) == *zero).count() as u64
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;
    use num_traits::Signed;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn canonicalize_examples() {
        let g = canonicalize(2, &IntMatrix::from_rows(2, vec![]));
        assert_eq!((g.free_rank(), g.torsion().len()), (2, 0));
        let g = canonicalize(2, &IntMatrix::from_i64(2, &[&[2, 4], &[4, 8]]));
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion(), &ints(&[2])[..]);
        let g = canonicalize(1, &IntMatrix::from_i64(1, &[&[1]]));
        assert!(g.is_trivial());
    }

    #[test]
    fn presentation_roundtrip() {
        let g = canonicalize(3, &IntMatrix::from_i64(3, &[&[2, 4, 6], &[0, 3, 9]]));
        let p = g.presentation();
        let back = p.to_canonical().mul(p.from_canonical());
        for i in 0..g.ngens() {
            let col = g.element(back.column(i));
            assert_eq!(col, g.generator(i));
        }
        // every relation dies
        for row in p.relations().row_iter() {
            assert!(g.is_zero(&g.from_user(row)));
        }
    }

    #[test]
    fn kernel_examples() {
        let z = FgAbGroup::free(1);
        let (k, _) = GroupHom::scalar(&z, 2).kernel();
        assert!(k.is_trivial());
        let z4 = FgAbGroup::cyclic(4);
        let (k, inc) = GroupHom::scalar(&z4, 2).kernel();
        assert_eq!(k.torsion(), &ints(&[2])[..]);
        assert_eq!(inc.apply(&k.generator(0)), z4.element_i64(&[2]));
        let (k, inc) = GroupHom::zero(&z, &z).kernel();
        assert_eq!(k.free_rank(), 1);
        assert!(inc.is_isomorphism());
    }

    #[test]
    fn cokernel_examples() {
        let z = FgAbGroup::free(1);
        assert_eq!(GroupHom::scalar(&z, 2).cokernel().0.torsion(), &ints(&[2])[..]);
        assert!(GroupHom::scalar(&z, 1).cokernel().0.is_trivial());
        let z2 = FgAbGroup::free(2);
        let h = GroupHom::new(&z2, &z2, IntMatrix::from_i64(2, &[&[2, 0], &[0, 3]])).unwrap();
        let (c, p) = h.cokernel();
        assert_eq!(c.torsion(), &ints(&[6])[..]);
        assert!(p.compose(&h).is_zero());
        assert!(p.is_surjective());
    }

    #[test]
    fn ill_defined_hom_rejected() {
        let z4 = FgAbGroup::cyclic(4);
        let z = FgAbGroup::free(1);
        assert!(matches!(
            GroupHom::new(&z4, &z, IntMatrix::from_i64(1, &[&[1]])),
            Err(Error::IllDefinedHom(_))
        ));
        let z3 = FgAbGroup::cyclic(3);
        assert!(GroupHom::new(&z4, &z3, IntMatrix::from_i64(1, &[&[1]])).is_err());
    }

    #[test]
    fn tensor_and_tor_of_cyclics() {
        let c = |n| FgAbGroup::cyclic(n);
        assert!(tensor(&c(2), &c(3)).group.is_trivial());
        assert_eq!(tensor(&c(4), &c(6)).group.torsion(), &ints(&[2])[..]);
        let g = FgAbGroup::from_invariants(1, &ints(&[2, 4]));
        assert!(tensor(&FgAbGroup::free(1), &g).group.same_type(&g));
        assert!(tor1(&FgAbGroup::free(1), &g).is_trivial());
        assert_eq!(tor1(&c(2), &c(2)).torsion(), &ints(&[2])[..]);
        assert_eq!(tor1(&c(4), &c(6)).torsion(), &ints(&[2])[..]);
    }

    #[test]
    fn involution_examples() {
        let z = FgAbGroup::free(1);
        let ic = invariants_and_coinvariants(&z, &GroupHom::identity(&z)).unwrap();
        assert_eq!(ic.invariants.free_rank(), 1);
        assert_eq!(ic.coinvariants.free_rank(), 1);
        assert_eq!(ic.norm.matrix()[(0, 0)].abs(), int(2));

        let z2 = FgAbGroup::free(2);
        let swap = GroupHom::new(&z2, &z2, IntMatrix::from_i64(2, &[&[0, 1], &[1, 0]])).unwrap();
        let ic = invariants_and_coinvariants(&z2, &swap).unwrap();
        assert_eq!(ic.invariants.free_rank(), 1);
        assert_eq!(ic.coinvariants.free_rank(), 1);
        let x = ic.projection.apply(&z2.element_i64(&[1, 0]));
        let image = ic.inclusion.apply(&ic.norm.apply(&x));
        assert_eq!(image, z2.element_i64(&[1, 1]));

        let neg = GroupHom::scalar(&z, -1);
        let ic = invariants_and_coinvariants(&z, &neg).unwrap();
        assert!(ic.invariants.is_trivial());
        assert_eq!(ic.coinvariants.torsion(), &ints(&[2])[..]);

        let bad = GroupHom::scalar(&z, 2);
        assert!(invariants_and_coinvariants(&z, &bad).is_err());
    }

    #[test]
    fn enumeration_oracle_matches_snf() {
        let g = FgAbGroup::from_invariants(0, &ints(&[2, 12, 3]));
        let elems = g.elements().unwrap();
        let f = invariant_factors_by_enumeration(&elems, &g.zero(), |a, b| g.add(a, b));
        assert_eq!(f, g.torsion().to_vec());
    }

    #[test]
    fn direct_sum_structure() {
        let parts = [FgAbGroup::cyclic(4), FgAbGroup::free(1), FgAbGroup::cyclic(6)];
        let ds = direct_sum(&parts);
        assert_eq!(ds.group.torsion(), &ints(&[2, 12])[..]);
        assert_eq!(ds.group.free_rank(), 1);
        for (i, (inj, proj)) in ds.injections.iter().zip(&ds.projections).enumerate() {
            assert!(proj.compose(inj).equals(&GroupHom::identity(&parts[i])));
        }
    }
}
