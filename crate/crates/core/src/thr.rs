//! Closed-form presentations of the π₀ Mackey functor of real topological
//! Hochschild homology, and their group-ring specializations.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fgab::{bilinear_pairs, canonicalize, Element, FgAbGroup, GroupHom};
use crate::mackey::{
    box_hom, box_over_green, box_product, burnside_unit_map, validate_hermitian, validate_mackey,
    BoxProduct, HermitianMackey, MackeyHom, MackeyZ2,
};
use crate::matrix::{Int, IntMatrix};
use crate::ringalg::{commutator_quotient, conjugation_classes, FinMonoid, PresRing, UnionFind};
use crate::witt::{hermitian_witt_actions, witt_green};

/// The result of a π₀ computation.
#[derive(Clone, Debug)]
pub struct Pi0Report {
    pub result: MackeyZ2,
    /// One line per family of imposed relations.
    pub trace: Vec<String>,
    /// Class of the unit in the underlying level.
    pub unit_e: Element,
    /// `1 ⊗ 1` in the fixed level.
    pub unit_fix: Element,
    /// Ring structure on the fixed level (commutative case).
    pub ring: Option<PresRing>,
    /// `N(g_i) ⊗ 1` for the canonical generators `g_i` of the underlying ring.
    pub norm: Option<Vec<Element>>,
    /// Whether the comparison with the relative box product is an isomorphism.
    pub box_agrees: Option<bool>,
}

impl Pi0Report {
    /// `x ⊗ y` in the fixed level, for fixed elements of the input.
    pub fn pair(&self, x: &Element, y: &Element) -> Element {
        self.result.level_fix.from_user(&bilinear_pairs(x, y))
    }
}

struct PairRelations<'a> {
    h: &'a HermitianMackey,
    rows: Vec<Vec<Int>>,
    trace: Vec<String>,
}

impl<'a> PairRelations<'a> {
    fn new(h: &'a HermitianMackey) -> Self {
        let fix = &h.mackey.level_fix;
        let n = fix.ngens();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let g = fix.modulus(i).gcd(fix.modulus(j));
                if !g.is_zero() {
                    let mut r = vec![Int::zero(); n * n];
                    r[i * n + j] = g;
                    rows.push(r);
                }
            }
        }
        let trace = vec![format!("torsion of the tensor square: {} relations", rows.len())];
        Self { h, rows, trace }
    }

    fn push(&mut self, x1: &Element, y1: &Element, x2: &Element, y2: &Element) {
        let r: Vec<Int> = bilinear_pairs(x1, y1)
            .into_iter()
            .zip(bilinear_pairs(x2, y2))
            .map(|(a, b)| a - b)
            .collect();
        if r.iter().any(|v| !v.is_zero()) {
            self.rows.push(r);
        }
    }

    fn family(&mut self, label: &str, f: impl FnOnce(&mut Self)) {
        let before = self.rows.len();
        f(self);
        let added = self.rows.len() - before;
        self.trace.push(format!("{label}: {added} relations"));
    }

    fn group(&self) -> FgAbGroup {
        let n = self.h.mackey.level_fix.ngens();
        canonicalize(n * n, &IntMatrix::from_rows(n * n, self.rows.clone()))
    }
}

fn require_unit(h: &HermitianMackey) -> Result<Element> {
    let rep = validate_hermitian(h);
    if !rep.is_valid() {
        return Err(Error::Validation(format!("Hermitian data: {:?}", rep.violations)));
    }
    h.unit_fix
        .clone()
        .ok_or_else(|| Error::Missing("Hermitian data has no unit in the fixed level".into()))
}

/// Assembles the Mackey functor on `R/[R,R]` and `(fix ⊗ fix)/T`.
fn assemble(h: &HermitianMackey, rel: PairRelations, unit: &Element) -> Result<Pi0Report> {
    let m = &h.mackey;
    let r = &h.ring_e;
    let cq = commutator_quotient(r)?;
    let level_e = cq.group.clone();
    let level_fix = rel.group();
    let w = cq
        .involution
        .clone()
        .ok_or_else(|| Error::Missing("ring has no anti-involution".into()))?;
    let fix = &m.level_fix;
    let pair = |x: &Element, y: &Element| level_fix.from_user(&bilinear_pairs(x, y));
    let res_images: Vec<Element> = fix
        .generators()
        .iter()
        .flat_map(|x| {
            fix.generators()
                .into_iter()
                .map(|y| cq.projection.apply(&r.mul(&m.res.apply(x), &m.res.apply(&y))))
                .collect::<Vec<_>>()
        })
        .collect();
    let res = GroupHom::from_user_images(&level_fix, &level_e, &res_images)?;
    let tran_images: Vec<Element> = m
        .level_e
        .generators()
        .iter()
        .map(|a| pair(&m.tran.apply(a), unit))
        .collect();
    let tran = GroupHom::from_user_images(&level_e, &level_fix, &tran_images)?;
    let result = MackeyZ2::new(level_e, level_fix.clone(), res, tran, w)?;
    let rep = validate_mackey(&result);
    if !rep.is_valid() {
        return Err(Error::Validation(format!("π₀ result: {:?}", rep.violations)));
    }
    Ok(Pi0Report {
        unit_e: cq.projection.apply(&r.one()),
        unit_fix: pair(unit, unit),
        result,
        trace: rel.trace,
        ring: None,
        norm: None,
        box_agrees: None,
    })
}

/// π₀ from the relations `x ⊗ a·y − w(a)·x ⊗ y` and
/// `x ⊗ tran(a res(y) w(b)) − tran(w(b) res(x) a) ⊗ y`, over generators.
pub fn thr_pi0_presentation(h: &HermitianMackey) -> Result<Pi0Report> {
    let unit = require_unit(h)?;
    let m = &h.mackey;
    let r = &h.ring_e;
    let (e, fix) = (&m.level_e, &m.level_fix);
    let mut rel = PairRelations::new(h);
    rel.family("x ⊗ a·y − w(a)·x ⊗ y", |rel| {
        for a in e.generators() {
            let wa = m.w.apply(&a);
            for x in fix.generators() {
                let wax = h.act(&wa, &x);
                for y in fix.generators() {
                    rel.push(&x, &h.act(&a, &y), &wax, &y);
                }
            }
        }
    });
    rel.family("x ⊗ tran(a res(y) w(b)) − tran(w(b) res(x) a) ⊗ y", |rel| {
        for a in e.generators() {
            for b in e.generators() {
                let wb = m.w.apply(&b);
                for x in fix.generators() {
                    let left = m.tran.apply(&r.mul3(&wb, &m.res.apply(&x), &a));
                    for y in fix.generators() {
                        let right = m.tran.apply(&r.mul3(&a, &m.res.apply(&y), &wb));
                        rel.push(&x, &right, &left, &y);
                    }
                }
            }
        }
    });
    assemble(h, rel, &unit)
}

/// π₀ with the relative-box-product oracle: the map `[a] ↦ [a ⊗ 1]`,
/// `x ⊗ y ↦ x ⊗ y` into `H □_W H` must be an isomorphism.
pub fn thr_pi0(h: &HermitianMackey) -> Result<Pi0Report> {
    let mut rep = thr_pi0_presentation(h)?;
    let bx = thr_pi0_box(h)?;
    rep.box_agrees = Some(compare_with_box(h, &rep, &bx)?.is_isomorphism());
    Ok(rep)
}

/// `H □_{W(R)} H` for the Witt Green functor of the underlying ring.
pub fn thr_pi0_box(h: &HermitianMackey) -> Result<BoxProduct> {
    let wg = witt_green(&h.ring_e, false)?;
    let (right, left) = hermitian_witt_actions(h, &wg)?;
    box_over_green(&right, &left)
}

fn compare_with_box(h: &HermitianMackey, rep: &Pi0Report, bx: &BoxProduct) -> Result<MackeyHom> {
    let m = &h.mackey;
    let one = h.ring_e.one();
    let e_images: Vec<Element> = m.level_e.generators().iter().map(|a| bx.e_pair(a, &one)).collect();
    let fix_images: Vec<Element> = m
        .level_fix
        .generators()
        .iter()
        .flat_map(|x| {
            m.level_fix
                .generators()
                .into_iter()
                .map(|y| bx.fix_pair(x, &y))
                .collect::<Vec<_>>()
        })
        .collect();
    let f_e = GroupHom::from_user_images(&rep.result.level_e, &bx.mackey.level_e, &e_images)?;
    let f_fix = GroupHom::from_user_images(&rep.result.level_fix, &bx.mackey.level_fix, &fix_images)?;
    MackeyHom::new(&rep.result, &bx.mackey, f_e, f_fix)
}

/// The commutative form: relations `x ⊗ N(a)y − xN(a) ⊗ y` and
/// `x ⊗ tran(a)y − x tran(a) ⊗ y`; the fixed level is a ring with norm `a ↦ N(a) ⊗ 1`.
pub fn thr_pi0_commutative(h: &HermitianMackey) -> Result<Pi0Report> {
    let unit = require_unit(h)?;
    if !h.ring_e.is_commutative() {
        return Err(Error::InvalidRing("underlying ring is not commutative".into()));
    }
    let ring_fix = h
        .ring_fix
        .clone()
        .ok_or_else(|| Error::Missing("fixed level has no ring structure".into()))?;
    let m = &h.mackey;
    let (e, fix) = (&m.level_e, &m.level_fix);
    let mut rel = PairRelations::new(h);
    rel.family("x ⊗ N(a)y − xN(a) ⊗ y", |rel| {
        for a in e.generators() {
            let na = h.act(&a, &unit);
            for x in fix.generators() {
                for y in fix.generators() {
                    rel.push(&x, &ring_fix.mul(&na, &y), &ring_fix.mul(&x, &na), &y);
                }
            }
        }
    });
    rel.family("x ⊗ tran(a)y − x tran(a) ⊗ y", |rel| {
        for a in e.generators() {
            let ta = m.tran.apply(&a);
            for x in fix.generators() {
                for y in fix.generators() {
                    rel.push(&x, &ring_fix.mul(&ta, &y), &ring_fix.mul(&x, &ta), &y);
                }
            }
        }
    });
    let mut rep = assemble(h, rel, &unit)?;
    let level_fix = rep.result.level_fix.clone();
    let gens = fix.generators();
    let mul_user: Vec<Vec<Vec<Int>>> = gens
        .iter()
        .flat_map(|x| gens.iter().map(move |y| (x, y)))
        .map(|(x, y)| {
            gens.iter()
                .flat_map(|x2| gens.iter().map(move |y2| (x2, y2)))
                .map(|(x2, y2)| bilinear_pairs(&ring_fix.mul(x, x2), &ring_fix.mul(y, y2)))
                .collect()
        })
        .collect();
    let ring = PresRing::from_user(level_fix, &mul_user, &bilinear_pairs(&unit, &unit), None)
        .map_err(|e| Error::Validation(format!("relations do not generate an ideal: {e}")))?;
    let norm: Vec<Element> = e
        .generators()
        .iter()
        .map(|a| rep.pair(&h.act(a, &unit), &unit))
        .collect();
    // agreement with the general presentation: identity on pairs both ways
    let general = thr_pi0_presentation(h)?;
    let ident = |src: &MackeyZ2, tgt: &MackeyZ2| -> Result<MackeyHom> {
        let ne = src.level_e.user_generators();
        let nf = src.level_fix.user_generators();
        let e_images: Vec<Element> = (0..ne).map(|i| tgt.level_e.user_generator(i)).collect();
        let f_images: Vec<Element> = (0..nf).map(|i| tgt.level_fix.user_generator(i)).collect();
        MackeyHom::new(
            src,
            tgt,
            GroupHom::from_user_images(&src.level_e, &tgt.level_e, &e_images)?,
            GroupHom::from_user_images(&src.level_fix, &tgt.level_fix, &f_images)?,
        )
    };
    let agrees = ident(&rep.result, &general.result).is_ok_and(|f| f.is_isomorphism())
        && ident(&general.result, &rep.result).is_ok();
    rep.box_agrees = Some(agrees);
    rep.ring = Some(ring);
    rep.norm = Some(norm);
    Ok(rep)
}

/// Checks that the norm is multiplicative on generators and that `res` is a unital ring map.
pub fn check_commutative_structure(h: &HermitianMackey, rep: &Pi0Report) -> Result<bool> {
    let ring = rep.ring.as_ref().ok_or_else(|| Error::Missing("no ring structure".into()))?;
    let unit = h.unit_fix.clone().ok_or_else(|| Error::Missing("no unit".into()))?;
    let r = &h.ring_e;
    let e = &h.mackey.level_e;
    let n = |a: &Element| rep.pair(&h.act(a, &unit), &unit);
    for a in e.generators() {
        for b in e.generators() {
            if n(&r.mul(&a, &b)) != ring.mul(&n(&a), &n(&b)) {
                return Ok(false);
            }
        }
    }
    let res = &rep.result.res;
    if res.apply(&ring.one()) != rep.unit_e {
        return Ok(false);
    }
    let cq = commutator_quotient(r)?;
    for x in rep.result.level_fix.generators() {
        for y in rep.result.level_fix.generators() {
            let lhs = res.apply(&ring.mul(&x, &y));
            let lifts = (cq.projection.preimage(&res.apply(&x)), cq.projection.preimage(&res.apply(&y)));
            let (Some(rx), Some(ry)) = lifts else {
                return Ok(false);
            };
            if lhs != cq.projection.apply(&r.mul(&rx, &ry)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The multiplication map `π₀ → H`, `[a] ↦ a`, `x ⊗ y ↦ xy`, for commutative `H` with a fixed ring.
pub fn multiplication_map(h: &HermitianMackey, rep: &Pi0Report) -> Result<MackeyHom> {
    let ring_fix = h
        .ring_fix
        .as_ref()
        .ok_or_else(|| Error::Missing("fixed level has no ring structure".into()))?;
    let m = &h.mackey;
    let e_images = m.level_e.generators();
    let fix_images: Vec<Element> = m
        .level_fix
        .generators()
        .iter()
        .flat_map(|x| {
            m.level_fix
                .generators()
                .into_iter()
                .map(|y| ring_fix.mul(x, &y))
                .collect::<Vec<_>>()
        })
        .collect();
    MackeyHom::new(
        &rep.result,
        m,
        GroupHom::from_user_images(&rep.result.level_e, &m.level_e, &e_images)?,
        GroupHom::from_user_images(&rep.result.level_fix, &m.level_fix, &fix_images)?,
    )
}

/// Combinatorial data of the dihedral bar construction in degree zero.
#[derive(Clone, Debug)]
pub struct DihedralData {
    pub class_names: Vec<String>,
    pub class_involution: Vec<usize>,
    pub pair_names: Vec<String>,
    /// Class of the product `xy` for each fixed pair `[x, y]`.
    pub pair_product_class: Vec<usize>,
    /// A representative `(x, y)` of each pair class, as monoid elements.
    pub pair_reps: Vec<(usize, usize)>,
}

impl DihedralData {
    pub fn from_monoid(m: &FinMonoid) -> Self {
        let classes = conjugation_classes(m);
        let mut class_of = vec![0; m.len()];
        for (c, members) in classes.iter().enumerate() {
            for &x in members {
                class_of[x] = c;
            }
        }
        let class_names = classes.iter().map(|c| format!("[{}]", m.name(c[0]))).collect();
        let class_involution = classes.iter().map(|c| class_of[m.iota(c[0])]).collect();
        let fixed: Vec<usize> = (0..m.len()).filter(|&x| m.iota(x) == x).collect();
        let nf = fixed.len();
        let pos = |x: usize| fixed.iter().position(|&f| f == x).expect("fixed element");
        let mut uf = UnionFind::new(nf * nf);
        for g in 0..m.len() {
            let ig = m.iota(g);
            for &x in &fixed {
                for &y in &fixed {
                    let x2 = m.mul(m.mul(ig, x), g);
                    let y2 = m.mul(m.mul(g, y), ig);
                    uf.union(pos(x2) * nf + pos(y), pos(x) * nf + pos(y2));
                }
            }
        }
        let pair_classes = uf.classes();
        let pair_reps: Vec<(usize, usize)> = pair_classes
            .iter()
            .map(|c| (fixed[c[0] / nf], fixed[c[0] % nf]))
            .collect();
        let pair_names = pair_reps
            .iter()
            .map(|&(x, y)| format!("[{},{}]", m.name(x), m.name(y)))
            .collect();
        let pair_product_class = pair_reps.iter().map(|&(x, y)| class_of[m.mul(x, y)]).collect();
        Self {
            class_names,
            class_involution,
            pair_names,
            pair_product_class,
            pair_reps,
        }
    }

    /// Classes `t^n` for `|n| ≤ window` and the single fixed pair `[1, 1]`;
    /// representatives are class indices.
    pub fn laurent(window: usize) -> Self {
        let n = window as i64;
        let exps: Vec<i64> = (-n..=n).collect();
        let class_names = exps.iter().map(|e| format!("t^{e}")).collect();
        let class_involution = (0..exps.len()).map(|i| exps.len() - 1 - i).collect();
        Self {
            class_names,
            class_involution,
            pair_names: vec!["u".to_string()],
            pair_product_class: vec![window],
            pair_reps: vec![(window, window)],
        }
    }

    pub fn class_count(&self) -> usize {
        self.class_names.len()
    }

    pub fn pair_count(&self) -> usize {
        self.pair_names.len()
    }

    /// Underlying level free on the classes; fixed level the coinvariants plus
    /// the pairs, divided by `2[x,y] − [xy]` when `impose_d` is set.
    pub fn mackey(&self, impose_d: bool) -> Result<MackeyZ2> {
        let (nc, np) = (self.class_count(), self.pair_count());
        let width = nc + np;
        let level_e = FgAbGroup::free(nc);
        let unit = |i: usize, w: usize| {
            let mut v = vec![Int::zero(); w];
            v[i] = Int::from(1);
            v
        };
        let mut rows = Vec::new();
        for c in 0..nc {
            let ic = self.class_involution[c];
            if ic > c {
                let mut r = unit(c, width);
                r[ic] -= 1;
                rows.push(r);
            }
        }
        if impose_d {
            for p in 0..np {
                let mut r = vec![Int::zero(); width];
                r[nc + p] = Int::from(2);
                r[self.pair_product_class[p]] -= 1;
                rows.push(r);
            }
        }
        let level_fix = canonicalize(width, &IntMatrix::from_rows(width, rows));
        let w_images: Vec<Element> = self
            .class_involution
            .iter()
            .map(|&ic| level_e.user_generator(ic))
            .collect();
        let w = GroupHom::from_user_images(&level_e, &level_e, &w_images)?;
        let tran_images: Vec<Element> = (0..nc).map(|c| level_fix.user_generator(c)).collect();
        let tran = GroupHom::from_user_images(&level_e, &level_fix, &tran_images)?;
        let mut res_images: Vec<Element> = (0..nc)
            .map(|c| level_e.add(&level_e.user_generator(c), &level_e.user_generator(self.class_involution[c])))
            .collect();
        res_images.extend(self.pair_product_class.iter().map(|&c| level_e.user_generator(c)));
        let res = GroupHom::from_user_images(&level_fix, &level_e, &res_images)?;
        MackeyZ2::new(level_e, level_fix, res, tran, w)
    }
}

/// The degree-zero Mackey functor of the dihedral bar construction of `m`.
pub fn dihedral_pi0(m: &FinMonoid) -> Result<(DihedralData, MackeyZ2)> {
    let data = DihedralData::from_monoid(m);
    let mackey = data.mackey(false)?;
    Ok((data, mackey))
}

/// The two computations of π₀ for a group ring.
#[derive(Clone, Debug)]
pub struct GroupRingReport {
    pub data: DihedralData,
    pub dihedral: MackeyZ2,
    pub base: Pi0Report,
    /// `π₀(base) □ π₀(dihedral)`.
    pub box_path: BoxProduct,
    /// The direct quotient by `2[g,g'] − [gg']`, for the integral base.
    pub direct: Option<MackeyZ2>,
    /// Comparison map from the direct presentation into the box path.
    pub comparison: Option<MackeyHom>,
}

impl GroupRingReport {
    pub fn result(&self) -> &MackeyZ2 {
        &self.box_path.mackey
    }

    pub fn paths_agree(&self) -> Option<bool> {
        self.comparison.as_ref().map(MackeyHom::is_isomorphism)
    }

    /// Named elements of the result: `1 ⊗ [g]` in the underlying level, and
    /// `tran(1 ⊗ [g])`, `u ⊗ [x, y]` in the fixed level.
    pub fn named_basis(&self) -> (Vec<(String, Element)>, Vec<(String, Element)>) {
        let (d, bx, base) = (&self.dihedral, &self.box_path, &self.base);
        let nc = self.data.class_count();
        let classes = |c: usize| d.level_e.user_generator(c);
        let e = (0..nc)
            .map(|c| (self.data.class_names[c].clone(), bx.e_pair(&base.unit_e, &classes(c))))
            .collect();
        let mut fix: Vec<(String, Element)> = (0..nc)
            .map(|c| (format!("tran{}", self.data.class_names[c]), bx.fix_e_pair(&base.unit_e, &classes(c))))
            .collect();
        fix.extend((0..self.data.pair_count()).map(|p| {
            let y = d.level_fix.user_generator(nc + p);
            (self.data.pair_names[p].clone(), bx.fix_pair(&base.unit_fix, &y))
        }));
        (e, fix)
    }
}

pub fn thr_group_ring(g: &FinMonoid, base: &HermitianMackey, integral: bool) -> Result<GroupRingReport> {
    if !g.is_group() {
        return Err(Error::InvalidMonoid("not a group: some element has no inverse".into()));
    }
    let base_rep = thr_pi0_presentation(base)?;
    let (data, dihedral) = dihedral_pi0(g)?;
    let box_path = box_product(&base_rep.result, &dihedral)?;
    let (direct, comparison) = if integral {
        let direct = data.mackey(true)?;
        let cmp = direct_to_box(&data, &direct, &dihedral, &base_rep, &box_path)?;
        (Some(direct), Some(cmp))
    } else {
        (None, None)
    };
    Ok(GroupRingReport {
        data,
        dihedral,
        base: base_rep,
        box_path,
        direct,
        comparison,
    })
}

/// `[g] ↦ 1 ⊗ [g]`, coinvariant `[g] ↦ tran(1 ⊗ [g])`, `[g, g'] ↦ u ⊗ [g, g']`.
fn direct_to_box(
    data: &DihedralData,
    direct: &MackeyZ2,
    dihedral: &MackeyZ2,
    base: &Pi0Report,
    bx: &BoxProduct,
) -> Result<MackeyHom> {
    let nc = data.class_count();
    let e_images: Vec<Element> = (0..nc)
        .map(|c| bx.e_pair(&base.unit_e, &dihedral.level_e.user_generator(c)))
        .collect();
    let mut fix_images: Vec<Element> = (0..nc)
        .map(|c| bx.fix_e_pair(&base.unit_e, &dihedral.level_e.user_generator(c)))
        .collect();
    fix_images.extend(
        (0..data.pair_count()).map(|p| bx.fix_pair(&base.unit_fix, &dihedral.level_fix.user_generator(nc + p))),
    );
    MackeyHom::new(
        direct,
        &bx.mackey,
        GroupHom::from_user_images(&direct.level_e, &bx.mackey.level_e, &e_images)?,
        GroupHom::from_user_images(&direct.level_fix, &bx.mackey.level_fix, &fix_images)?,
    )
}

/// For a base with the Burnside functor as π₀: the composite
/// `π₀(base) □ D → Burnside □ D → D`.
pub fn box_path_to_dihedral(
    base_h: &HermitianMackey,
    rep: &GroupRingReport,
    dihedral: &MackeyZ2,
) -> Result<MackeyHom> {
    let mult = multiplication_map(base_h, &rep.base)?;
    let bd = box_product(&base_h.mackey, dihedral)?;
    let step = box_hom(&mult, &MackeyHom::identity(dihedral), &rep.box_path, &bd)?;
    Ok(burnside_unit_map(&bd)?.compose(&step))
}

/// The truncated Laurent computation.
#[derive(Clone, Debug)]
pub struct LaurentReport {
    pub window: usize,
    pub data: DihedralData,
    pub result: MackeyZ2,
}

impl LaurentReport {
    /// Class of `t^n` in the fixed level (`|n| ≤ window`).
    pub fn t(&self, n: i64) -> Element {
        let idx = (n + self.window as i64) as usize;
        self.result.level_fix.user_generator(idx)
    }

    pub fn t_e(&self, n: i64) -> Element {
        let idx = (n + self.window as i64) as usize;
        self.result.level_e.user_generator(idx)
    }

    pub fn u(&self) -> Element {
        self.result.level_fix.user_generator(self.data.class_count())
    }

    /// `t^n` in the underlying level; `t^n` (`n ≥ 0`) and `u` in the fixed level.
    pub fn named_basis(&self) -> (Vec<(String, Element)>, Vec<(String, Element)>) {
        let n = self.window as i64;
        let e = (-n..=n).map(|k| (format!("t^{k}"), self.t_e(k))).collect();
        let mut fix: Vec<(String, Element)> = (0..=n).map(|k| (format!("t^{k}"), self.t(k))).collect();
        fix.push(("u".into(), self.u()));
        (e, fix)
    }

    /// Whether `t^1, ..., t^N, u` form a basis of the fixed level.
    pub fn has_expected_basis(&self) -> bool {
        let fix = &self.result.level_fix;
        let mut images: Vec<Element> = (1..=self.window as i64).map(|n| self.t(n)).collect();
        images.push(self.u());
        let free = FgAbGroup::free(images.len());
        GroupHom::from_images(&free, fix, images).is_ok_and(|h| h.is_isomorphism())
    }
}

pub fn laurent_thr_pi0(window: usize) -> Result<LaurentReport> {
    if window == 0 {
        return Err(Error::Unsupported("the window must be at least 1".into()));
    }
    let data = DihedralData::laurent(window);
    let result = data.mackey(true)?;
    Ok(LaurentReport { window, data, result })
}

/// The inclusion of a smaller window into a larger one.
pub fn laurent_inclusion(small: &LaurentReport, large: &LaurentReport) -> Result<MackeyHom> {
    if small.window > large.window {
        return Err(Error::Shape("windows in the wrong order".into()));
    }
    let n = small.window as i64;
    let e_images: Vec<Element> = (-n..=n).map(|k| large.t_e(k)).collect();
    let mut fix_images: Vec<Element> = (-n..=n).map(|k| large.t(k)).collect();
    fix_images.push(large.u());
    MackeyHom::new(
        &small.result,
        &large.result,
        GroupHom::from_user_images(&small.result.level_e, &large.result.level_e, &e_images)?,
        GroupHom::from_user_images(&small.result.level_fix, &large.result.level_fix, &fix_images)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{burnside_hermitian, burnside_mackey, hermitian_from_ring};
    use crate::ringalg::{group_by_name, integers, monoid_ring, zmod};

    #[test]
    fn pi0_of_fields_and_integers() {
        for p in [2, 3] {
            let h = hermitian_from_ring(&zmod(p)).unwrap();
            let rep = thr_pi0(&h).unwrap();
            assert_eq!(rep.box_agrees, Some(true));
            assert_eq!(rep.result.level_fix.elementary_rank(p as u64), Some(1));
            assert!(rep.result.res.is_isomorphism());
        }
        let h = hermitian_from_ring(&integers()).unwrap();
        let rep = thr_pi0(&h).unwrap();
        assert_eq!(rep.box_agrees, Some(true));
        assert!(rep.result.level_fix.same_type(&FgAbGroup::free(1)));
        assert!(rep.result.tran.is_injective());
    }

    #[test]
    fn pi0_of_burnside() {
        let h = burnside_hermitian();
        let rep = thr_pi0(&h).unwrap();
        assert_eq!(rep.box_agrees, Some(true));
        let f = multiplication_map(&h, &rep).unwrap();
        assert!(f.is_isomorphism());
        assert!(f.target.level_fix.same_type(&burnside_mackey().level_fix));
    }

    #[test]
    fn commutative_form() {
        let h = hermitian_from_ring(&integers()).unwrap();
        let rep = thr_pi0_commutative(&h).unwrap();
        assert_eq!(rep.box_agrees, Some(true));
        assert!(check_commutative_structure(&h, &rep).unwrap());
        let ring = rep.ring.as_ref().unwrap();
        let n = |k: i64| rep.pair(&h.act(&h.ring_e.from_int(&Int::from(k)), h.unit_fix.as_ref().unwrap()), h.unit_fix.as_ref().unwrap());
        for k in -4..=4 {
            assert_eq!(n(k), ring.from_int(&Int::from(k * k)));
        }
        let zc2 = monoid_ring(&integers(), &group_by_name("c2").unwrap()).unwrap();
        let h = hermitian_from_ring(&zc2).unwrap();
        let rep = thr_pi0_commutative(&h).unwrap();
        assert_eq!(rep.box_agrees, Some(true));
        assert!(check_commutative_structure(&h, &rep).unwrap());
        let fix = &rep.result.level_fix;
        assert_eq!(fix.free_rank(), 2);
        assert_eq!(fix.torsion(), &[Int::from(2), Int::from(2)][..]);
    }

    #[test]
    fn dihedral_examples() {
        let (_, d) = dihedral_pi0(&FinMonoid::trivial()).unwrap();
        assert!(d.level_fix.same_type(&FgAbGroup::free(2)));
        assert!(validate_mackey(&d).is_valid());
        let (data, d) = dihedral_pi0(&group_by_name("c2").unwrap()).unwrap();
        assert_eq!((data.class_count(), data.pair_count()), (2, 4));
        assert!(d.level_fix.same_type(&FgAbGroup::free(6)));
        let (data, d) = dihedral_pi0(&group_by_name("s3").unwrap()).unwrap();
        assert_eq!(data.class_count(), 3);
        assert!(validate_mackey(&d).is_valid());
    }

    #[test]
    fn group_ring_paths_agree() {
        let z = hermitian_from_ring(&integers()).unwrap();
        for name in ["c2", "c3", "s3"] {
            let g = group_by_name(name).unwrap();
            let rep = thr_group_ring(&g, &z, true).unwrap();
            assert_eq!(rep.paths_agree(), Some(true), "{name}");
        }
        let rep = thr_group_ring(&group_by_name("c2").unwrap(), &z, true).unwrap();
        let fix = &rep.result().level_fix;
        assert_eq!(fix.free_rank(), 2);
        assert_eq!(fix.torsion(), &[Int::from(2), Int::from(2)][..]);
    }

    #[test]
    fn sphere_base_group_ring() {
        let b = burnside_hermitian();
        let g = group_by_name("c2").unwrap();
        let rep = thr_group_ring(&g, &b, false).unwrap();
        let (_, d) = dihedral_pi0(&g).unwrap();
        let f = box_path_to_dihedral(&b, &rep, &d).unwrap();
        assert!(f.is_isomorphism());
    }

    #[test]
    fn laurent_window() {
        let l1 = laurent_thr_pi0(1).unwrap();
        assert!(l1.result.level_fix.same_type(&FgAbGroup::free(2)));
        assert!(l1.has_expected_basis());
        let l5 = laurent_thr_pi0(5).unwrap();
        let l8 = laurent_thr_pi0(8).unwrap();
        assert!(validate_mackey(&l5.result).is_valid());
        let inc = laurent_inclusion(&l5, &l8).unwrap();
        assert!(inc.f_e.is_injective() && inc.f_fix.is_injective());
    }
}
