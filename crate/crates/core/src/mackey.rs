//! Mackey, Green and Hermitian Mackey functors for the group of order two,
//! and their box products.
//!
//! A [`MackeyZ2`] has an underlying level `level_e` (the value at `Z/2`) with
//! involution `w`, a fixed level `level_fix`, restriction `res: fix → e` and
//! transfer `tran: e → fix`.

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::fgab::{
    bilinear_pairs, canonicalize, direct_sum, invariants_and_coinvariants, Element, FgAbGroup,
    GroupHom,
};
use crate::matrix::{Int, IntMatrix};
use crate::ringalg::{check_involution, validate_ring_laws, PresRing, Report};

pub const AX_W_SQUARE: &str = "w^2 = id";
pub const AX_W_RES: &str = "w∘res = res";
pub const AX_TRAN_W: &str = "tran∘w = tran";
pub const AX_DOUBLE_COSET: &str = "res∘tran = 1 + w";
pub const AX_RES_RING: &str = "res is a unital ring map";
pub const AX_W_RING: &str = "w is a ring automorphism";
pub const AX_FROBENIUS: &str = "Frobenius reciprocity";
pub const AX_RING_E: &str = "underlying ring";
pub const AX_RING_FIX: &str = "fixed ring";
pub const AX_ACTION_UNIT: &str = "1·x = x";
pub const AX_ACTION_ASSOC: &str = "(ab)·x = a·(b·x)";
pub const AX_HERM_II: &str = "res(a·x) = a res(x) w(a)";
pub const AX_HERM_III: &str = "tran(a b w(a)) = a·tran(b)";
pub const AX_HERM_WELL_DEFINED: &str = "action respects relations";
pub const AX_HERM_W: &str = "ring involution agrees with w";
pub const AX_UNIT_FIX: &str = "res(1) = 1";

/// `C(n, 2) = n(n-1)/2`, valid for all integers `n`.
pub fn choose2(n: &Int) -> Int {
    (n * (n - Int::one())) / Int::from(2)
}

#[derive(Clone, Debug)]
pub struct MackeyZ2 {
    pub level_e: FgAbGroup,
    pub level_fix: FgAbGroup,
    pub res: GroupHom,
    pub tran: GroupHom,
    pub w: GroupHom,
}

impl MackeyZ2 {
    pub fn new(level_e: FgAbGroup, level_fix: FgAbGroup, res: GroupHom, tran: GroupHom, w: GroupHom) -> Result<Self> {
        let ok = res.source().same_type(&level_fix)
            && res.target().same_type(&level_e)
            && tran.source().same_type(&level_e)
            && tran.target().same_type(&level_fix)
            && w.source().same_type(&level_e)
            && w.target().same_type(&level_e);
        if !ok {
            return Err(Error::Shape("structure maps do not match the levels".into()));
        }
        Ok(Self {
            level_e,
            level_fix,
            res,
            tran,
            w,
        })
    }

    /// Builds from canonical-basis matrices.
    pub fn from_matrices(
        level_e: FgAbGroup,
        level_fix: FgAbGroup,
        res: IntMatrix,
        tran: IntMatrix,
        w: IntMatrix,
    ) -> Result<Self> {
        let res = GroupHom::new(&level_fix, &level_e, res)?;
        let tran = GroupHom::new(&level_e, &level_fix, tran)?;
        let w = GroupHom::new(&level_e, &level_e, w)?;
        Self::new(level_e, level_fix, res, tran, w)
    }

    /// Replaces one entry of a structure map without any checks; used for mutation tests.
    pub fn mutated(&self, map: &str, row: usize, col: usize, value: i64) -> Result<Self> {
        let mut m = self.clone();
        let (hom, src, tgt) = match map {
            "res" => (&mut m.res, &self.level_fix, &self.level_e),
            "tran" => (&mut m.tran, &self.level_e, &self.level_fix),
            "w" => (&mut m.w, &self.level_e, &self.level_e),
            _ => return Err(Error::Unsupported(format!("unknown structure map {map}"))),
        };
        let mut mat = hom.matrix().clone();
        mat[(row, col)] = Int::from(value);
        *hom = GroupHom::new(src, tgt, mat)?;
        Ok(m)
    }
}

pub fn validate_mackey(m: &MackeyZ2) -> Report {
    let mut rep = Report::default();
    let e = &m.level_e;
    for (i, a) in e.generators().iter().enumerate() {
        if m.w.apply(&m.w.apply(a)) != *a {
            rep.push_once(AX_W_SQUARE, format!("underlying generator {i}"));
        }
        if m.tran.apply(&m.w.apply(a)) != m.tran.apply(a) {
            rep.push_once(AX_TRAN_W, format!("underlying generator {i}"));
        }
        if m.res.apply(&m.tran.apply(a)) != e.add(a, &m.w.apply(a)) {
            rep.push_once(AX_DOUBLE_COSET, format!("underlying generator {i}"));
        }
    }
    for (j, x) in m.level_fix.generators().iter().enumerate() {
        let r = m.res.apply(x);
        if m.w.apply(&r) != r {
            rep.push_once(AX_W_RES, format!("fixed generator {j}"));
        }
    }
    rep
}

/// A map of Mackey functors, given levelwise.
#[derive(Clone, Debug)]
pub struct MackeyHom {
    pub source: MackeyZ2,
    pub target: MackeyZ2,
    pub f_e: GroupHom,
    pub f_fix: GroupHom,
}

impl MackeyHom {
    pub fn new(source: &MackeyZ2, target: &MackeyZ2, f_e: GroupHom, f_fix: GroupHom) -> Result<Self> {
        let h = Self {
            source: source.clone(),
            target: target.clone(),
            f_e,
            f_fix,
        };
        let rep = h.validate();
        if !rep.is_valid() {
            return Err(Error::Validation(format!("not a map of Mackey functors: {:?}", rep.violations)));
        }
        Ok(h)
    }

    pub fn identity(m: &MackeyZ2) -> Self {
        Self {
            source: m.clone(),
            target: m.clone(),
            f_e: GroupHom::identity(&m.level_e),
            f_fix: GroupHom::identity(&m.level_fix),
        }
    }

    /// Compatibility with restriction, transfer and involution on generators.
    pub fn validate(&self) -> Report {
        let mut rep = Report::default();
        let (s, t) = (&self.source, &self.target);
        for (i, a) in s.level_e.generators().iter().enumerate() {
            let fa = self.f_e.apply(a);
            if self.f_fix.apply(&s.tran.apply(a)) != t.tran.apply(&fa) {
                rep.push_once("commutes with tran", format!("underlying generator {i}"));
            }
            if self.f_e.apply(&s.w.apply(a)) != t.w.apply(&fa) {
                rep.push_once("commutes with w", format!("underlying generator {i}"));
            }
        }
        for (j, x) in s.level_fix.generators().iter().enumerate() {
            if self.f_e.apply(&s.res.apply(x)) != t.res.apply(&self.f_fix.apply(x)) {
                rep.push_once("commutes with res", format!("fixed generator {j}"));
            }
        }
        rep
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f_e.is_isomorphism() && self.f_fix.is_isomorphism()
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &MackeyHom) -> MackeyHom {
        MackeyHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            f_e: self.f_e.compose(&inner.f_e),
            f_fix: self.f_fix.compose(&inner.f_fix),
        }
    }
}

/// A Mackey functor with compatible ring structures on both levels.
#[derive(Clone, Debug)]
pub struct GreenZ2 {
    pub mackey: MackeyZ2,
    pub ring_e: PresRing,
    pub ring_fix: PresRing,
}

pub fn validate_green(g: &GreenZ2) -> Report {
    let mut rep = validate_mackey(&g.mackey);
    let m = &g.mackey;
    if !validate_ring_laws(&g.ring_e).is_valid() {
        rep.push(AX_RING_E, format!("{:?}", validate_ring_laws(&g.ring_e).violations));
    }
    if !validate_ring_laws(&g.ring_fix).is_valid() {
        rep.push(AX_RING_FIX, format!("{:?}", validate_ring_laws(&g.ring_fix).violations));
    }
    if !check_involution(&g.ring_e, &m.w, false).is_valid() {
        rep.push(AX_W_RING, "w on the underlying ring".into());
    }
    if !g.ring_fix.is_ring_map(&g.ring_e, &m.res) {
        rep.push(AX_RES_RING, "res on fixed generators".into());
    }
    for (i, a) in m.level_e.generators().iter().enumerate() {
        let ta = m.tran.apply(a);
        for (j, x) in m.level_fix.generators().iter().enumerate() {
            let rx = m.res.apply(x);
            let left = m.tran.apply(&g.ring_e.mul(a, &rx)) == g.ring_fix.mul(&ta, x);
            let right = m.tran.apply(&g.ring_e.mul(&rx, a)) == g.ring_fix.mul(x, &ta);
            if !(left && right) {
                rep.push_once(AX_FROBENIUS, format!("underlying generator {i}, fixed generator {j}"));
            }
        }
    }
    rep
}

/// A Mackey functor whose underlying level is a ring with anti-involution `w`
/// acting on the fixed level. `action[i][j]` is `g_i · x_j` on canonical
/// generators; other values follow from
/// `(a + b)·x = a·x + b·x + tran(a res(x) w(b))`.
#[derive(Clone, Debug)]
pub struct HermitianMackey {
    pub mackey: MackeyZ2,
    pub ring_e: PresRing,
    pub action: Vec<Vec<Element>>,
    pub unit_fix: Option<Element>,
    /// Present when the fixed level carries a compatible ring structure.
    pub ring_fix: Option<PresRing>,
}

impl HermitianMackey {
    /// `tran(a res(x) w(b))`
    pub fn cross_term(&self, a: &Element, x: &Element, b: &Element) -> Element {
        let r = &self.ring_e;
        let rx = self.mackey.res.apply(x);
        self.mackey
            .tran
            .apply(&r.mul3(a, &rx, &self.mackey.w.apply(b)))
    }

    pub fn act(&self, a: &Element, x: &Element) -> Element {
        let fix = &self.mackey.level_fix;
        let mut acc = fix.zero();
        for (j, c) in x.coords().iter().enumerate() {
            if !c.is_zero() {
                acc = fix.add(&acc, &fix.scale(c, &self.act_on_generator(a, j)));
            }
        }
        acc
    }

    fn act_on_generator(&self, a: &Element, j: usize) -> Element {
        let fix = &self.mackey.level_fix;
        let e = &self.mackey.level_e;
        let x = fix.generator(j);
        let terms: Vec<(usize, &Int)> = a.coords().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut acc = fix.zero();
        for (k, &(i, n)) in terms.iter().enumerate() {
            let g = e.generator(i);
            acc = fix.add(&acc, &fix.scale(n, &self.action[i][j]));
            acc = fix.add(&acc, &fix.scale(&choose2(n), &self.cross_term(&g, &x, &g)));
            for &(l, m) in &terms[k + 1..] {
                let h = e.generator(l);
                acc = fix.add(&acc, &fix.scale(&(n * m), &self.cross_term(&g, &x, &h)));
            }
        }
        acc
    }

    /// The multiplicative norm `a ↦ a·1`.
    pub fn norm(&self, a: &Element) -> Option<Element> {
        self.unit_fix.as_ref().map(|u| self.act(a, u))
    }

    /// Replaces `action[i][j]`; used for mutation tests.
    pub fn with_action_entry(&self, i: usize, j: usize, value: Element) -> Self {
        let mut h = self.clone();
        h.action[i][j] = value;
        h
    }
}

pub fn validate_hermitian(h: &HermitianMackey) -> Report {
    let mut rep = validate_mackey(&h.mackey);
    let m = &h.mackey;
    let (e, fix, r) = (&m.level_e, &m.level_fix, &h.ring_e);
    if h.action.len() != e.ngens() || h.action.iter().any(|row| row.len() != fix.ngens()) {
        rep.push(AX_HERM_WELL_DEFINED, "action table has the wrong shape".into());
        return rep;
    }
    let ring_rep = validate_ring_laws(r);
    if !ring_rep.is_valid() {
        rep.push(AX_RING_E, format!("{:?}", ring_rep.violations));
    }
    if !r.involution().is_some_and(|w| w.equals(&m.w)) {
        rep.push(AX_HERM_W, "the ring involution differs from w".into());
    }
    if !check_involution(r, &m.w, true).is_valid() {
        rep.push(AX_HERM_W, "w is not an anti-involution of the ring".into());
    }
    for i in 0..e.ngens() {
        let g = e.generator(i);
        for j in 0..fix.ngens() {
            let x = fix.generator(j);
            let d = e.modulus(i);
            if !d.is_zero() {
                let v = fix.add(
                    &fix.scale(d, &h.action[i][j]),
                    &fix.scale(&choose2(d), &h.cross_term(&g, &x, &g)),
                );
                if !fix.is_zero(&v) {
                    rep.push_once(AX_HERM_WELL_DEFINED, format!("underlying torsion generator {i}, fixed generator {j}"));
                }
            }
            let o = fix.modulus(j);
            if !o.is_zero() && !fix.is_zero(&fix.scale(o, &h.action[i][j])) {
                rep.push_once(AX_HERM_WELL_DEFINED, format!("underlying generator {i}, fixed torsion generator {j}"));
            }
        }
    }
    for (j, x) in fix.generators().iter().enumerate() {
        if h.act(&r.one(), x) != *x {
            rep.push_once(AX_ACTION_UNIT, format!("fixed generator {j}"));
        }
    }
    for i in 0..e.ngens() {
        let a = e.generator(i);
        for k in 0..e.ngens() {
            let b = e.generator(k);
            let ab = r.mul(&a, &b);
            for (j, x) in fix.generators().iter().enumerate() {
                if h.act(&ab, x) != h.act(&a, &h.act(&b, x)) {
                    rep.push_once(AX_ACTION_ASSOC, format!("generators ({i}, {k}), fixed generator {j}"));
                }
            }
            if m.tran.apply(&r.mul3(&a, &b, &m.w.apply(&a))) != h.act(&a, &m.tran.apply(&b)) {
                rep.push_once(AX_HERM_III, format!("underlying generators ({i}, {k})"));
            }
        }
        for (j, x) in fix.generators().iter().enumerate() {
            let lhs = m.res.apply(&h.act(&a, x));
            let rhs = r.mul3(&a, &m.res.apply(x), &m.w.apply(&a));
            if lhs != rhs {
                rep.push_once(AX_HERM_II, format!("underlying generator {i}, fixed generator {j}"));
            }
        }
    }
    if let Some(u) = &h.unit_fix {
        if m.res.apply(u) != r.one() {
            rep.push(AX_UNIT_FIX, fix.format_element(u));
        }
    }
    rep
}

/// `R` as a Hermitian Mackey functor: fixed level `R^w`, `res` the inclusion,
/// `tran = 1 + w`, action `a·x = a x w(a)` and unit 1.
pub fn hermitian_from_ring(r: &PresRing) -> Result<HermitianMackey> {
    let w = r
        .involution()
        .cloned()
        .ok_or_else(|| Error::Missing("ring has no anti-involution".into()))?;
    let e = r.carrier().clone();
    let (fix, incl) = w.sub(&GroupHom::identity(&e)).kernel();
    let pre = |v: &Element| {
        incl.preimage(v)
            .ok_or_else(|| Error::Validation("value is not fixed by w".into()))
    };
    let tran_images = e
        .generators()
        .iter()
        .map(|a| pre(&e.add(a, &w.apply(a))))
        .collect::<Result<Vec<_>>>()?;
    let tran = GroupHom::from_images(&e, &fix, tran_images)?;
    let mackey = MackeyZ2::new(e.clone(), fix.clone(), incl.clone(), tran, w.clone())?;
    let action = e
        .generators()
        .iter()
        .map(|a| {
            fix.generators()
                .iter()
                .map(|x| pre(&r.mul3(a, &incl.apply(x), &w.apply(a))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let unit_fix = Some(pre(&r.one())?);
    let ring_fix = if r.is_commutative() {
        let mul = fix
            .generators()
            .iter()
            .map(|x| {
                fix.generators()
                    .iter()
                    .map(|y| pre(&r.mul(&incl.apply(x), &incl.apply(y))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Some(PresRing::new(fix.clone(), mul, unit_fix.clone().unwrap(), None)?)
    } else {
        None
    };
    Ok(HermitianMackey {
        mackey,
        ring_e: r.clone(),
        action,
        unit_fix,
        ring_fix,
    })
}

/// The Burnside Mackey functor: `Z` over `Z{1, t}`, `res(t) = 2`, `tran(1) = t`.
pub fn burnside_mackey() -> MackeyZ2 {
    MackeyZ2::from_matrices(
        FgAbGroup::free(1),
        FgAbGroup::free(2),
        IntMatrix::from_i64(2, &[&[1, 2]]),
        IntMatrix::from_i64(1, &[&[0], &[1]]),
        IntMatrix::from_i64(1, &[&[1]]),
    )
    .expect("Burnside data is well formed")
}

/// The Burnside ring `Z{1, t}` with `t² = 2t`.
pub fn burnside_ring() -> PresRing {
    let v = |a: i64, b: i64| vec![Int::from(a), Int::from(b)];
    PresRing::from_user(
        FgAbGroup::free(2),
        &[vec![v(1, 0), v(0, 1)], vec![v(0, 1), v(0, 2)]],
        &v(1, 0),
        None,
    )
    .expect("Burnside ring is well formed")
}

pub fn burnside_green() -> GreenZ2 {
    GreenZ2 {
        mackey: burnside_mackey(),
        ring_e: crate::ringalg::integers(),
        ring_fix: burnside_ring(),
    }
}

/// Burnside data with the action `n·x = N(n) x`, `N(n) = n + C(n,2) t`.
pub fn burnside_hermitian() -> HermitianMackey {
    let g = burnside_green();
    let fix = g.mackey.level_fix.clone();
    HermitianMackey {
        action: vec![fix.generators()],
        unit_fix: Some(fix.generator(0)),
        ring_fix: Some(g.ring_fix),
        ring_e: g.ring_e,
        mackey: g.mackey,
    }
}

/// Which side a module is acted on from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A module over a Green functor, given by action tables on canonical generators:
/// `act_e[α][m]` and `act_fix[β][x]`.
#[derive(Clone, Debug)]
pub struct GreenModule {
    pub green: GreenZ2,
    pub mackey: MackeyZ2,
    pub side: Side,
    pub act_e: Vec<Vec<Element>>,
    pub act_fix: Vec<Vec<Element>>,
}

fn bilinear_act(table: &[Vec<Element>], target: &FgAbGroup, alpha: &Element, m: &Element) -> Element {
    let mut acc = vec![Int::zero(); target.ngens()];
    for (i, a) in alpha.coords().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in m.coords().iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let k = a * b;
            for (o, c) in acc.iter_mut().zip(table[i][j].coords()) {
                *o += &k * c;
            }
        }
    }
    target.element(acc)
}

impl GreenModule {
    /// `α·m` for left modules, `m·α` for right modules.
    pub fn act_e(&self, alpha: &Element, m: &Element) -> Element {
        bilinear_act(&self.act_e, &self.mackey.level_e, alpha, m)
    }

    pub fn act_fix(&self, beta: &Element, x: &Element) -> Element {
        bilinear_act(&self.act_fix, &self.mackey.level_fix, beta, x)
    }

    /// The Burnside Green functor acting through its unit map.
    pub fn over_burnside(m: &MackeyZ2, side: Side) -> Self {
        let fix = &m.level_fix;
        let act_e = vec![m.level_e.generators()];
        let act_fix = vec![
            fix.generators(),
            fix.generators().iter().map(|x| m.tran.apply(&m.res.apply(x))).collect(),
        ];
        Self {
            green: burnside_green(),
            mackey: m.clone(),
            side,
            act_e,
            act_fix,
        }
    }
}

pub const AX_MODULE_SHAPE: &str = "module tables well defined";
pub const AX_MODULE_UNIT: &str = "module unit";
pub const AX_MODULE_ASSOC: &str = "module associativity";
pub const AX_MODULE_RES: &str = "res(βx) = res(β)res(x)";
pub const AX_MODULE_W: &str = "w(αm) = w(α)w(m)";
pub const AX_MODULE_TRAN_RES: &str = "tran(α·res x) = tran(α)·x";
pub const AX_MODULE_RES_TRAN: &str = "tran(res(β)·m) = β·tran(m)";

pub fn validate_module(md: &GreenModule) -> Report {
    let mut rep = validate_mackey(&md.mackey);
    let (a, m) = (&md.green, &md.mackey);
    let (ae, af) = (&a.mackey.level_e, &a.mackey.level_fix);
    let (me, mf) = (&m.level_e, &m.level_fix);
    if md.act_e.len() != ae.ngens()
        || md.act_e.iter().any(|r| r.len() != me.ngens())
        || md.act_fix.len() != af.ngens()
        || md.act_fix.iter().any(|r| r.len() != mf.ngens())
    {
        rep.push(AX_MODULE_SHAPE, "action tables have the wrong shape".into());
        return rep;
    }
    let killed = |g: &FgAbGroup, d: &Int, v: &Element| d.is_zero() || g.is_zero(&g.scale(d, v));
    for i in 0..ae.ngens() {
        for j in 0..me.ngens() {
            if !killed(me, ae.modulus(i), &md.act_e[i][j]) || !killed(me, me.modulus(j), &md.act_e[i][j]) {
                rep.push_once(AX_MODULE_SHAPE, format!("underlying entry ({i}, {j})"));
            }
        }
    }
    for i in 0..af.ngens() {
        for j in 0..mf.ngens() {
            if !killed(mf, af.modulus(i), &md.act_fix[i][j]) || !killed(mf, mf.modulus(j), &md.act_fix[i][j]) {
                rep.push_once(AX_MODULE_SHAPE, format!("fixed entry ({i}, {j})"));
            }
        }
    }
    // (αα')m = α(α'm) for left modules, m(αα') = (mα)α' for right modules.
    let compose = |first: &Element, second: &Element, prod: &Element, v: &Element, fix: bool| {
        let act = |x: &Element, y: &Element| if fix { md.act_fix(x, y) } else { md.act_e(x, y) };
        match md.side {
            Side::Left => act(prod, v) == act(first, &act(second, v)),
            Side::Right => act(prod, v) == act(second, &act(first, v)),
        }
    };
    for (j, x) in me.generators().iter().enumerate() {
        if md.act_e(&a.ring_e.one(), x) != *x {
            rep.push_once(AX_MODULE_UNIT, format!("underlying generator {j}"));
        }
    }
    for (j, x) in mf.generators().iter().enumerate() {
        if md.act_fix(&a.ring_fix.one(), x) != *x {
            rep.push_once(AX_MODULE_UNIT, format!("fixed generator {j}"));
        }
    }
    for (i, g) in ae.generators().iter().enumerate() {
        for (k, h) in ae.generators().iter().enumerate() {
            let gh = a.ring_e.mul(g, h);
            for (j, x) in me.generators().iter().enumerate() {
                if !compose(g, h, &gh, x, false) {
                    rep.push_once(AX_MODULE_ASSOC, format!("underlying ({i}, {k}) on {j}"));
                }
            }
        }
        for (j, x) in me.generators().iter().enumerate() {
            let lhs = m.w.apply(&md.act_e(g, x));
            let rhs = md.act_e(&a.mackey.w.apply(g), &m.w.apply(x));
            if lhs != rhs {
                rep.push_once(AX_MODULE_W, format!("underlying ({i}) on {j}"));
            }
        }
        let tg = a.mackey.tran.apply(g);
        for (j, x) in mf.generators().iter().enumerate() {
            let lhs = m.tran.apply(&md.act_e(g, &m.res.apply(x)));
            let rhs = md.act_fix(&tg, x);
            if lhs != rhs {
                rep.push_once(AX_MODULE_TRAN_RES, format!("underlying ({i}) on fixed {j}"));
            }
        }
    }
    for (i, b) in af.generators().iter().enumerate() {
        for (k, c) in af.generators().iter().enumerate() {
            let bc = a.ring_fix.mul(b, c);
            for (j, x) in mf.generators().iter().enumerate() {
                if !compose(b, c, &bc, x, true) {
                    rep.push_once(AX_MODULE_ASSOC, format!("fixed ({i}, {k}) on {j}"));
                }
            }
        }
        let rb = a.mackey.res.apply(b);
        for (j, x) in mf.generators().iter().enumerate() {
            if m.res.apply(&md.act_fix(b, x)) != md.act_e(&rb, &m.res.apply(x)) {
                rep.push_once(AX_MODULE_RES, format!("fixed ({i}) on {j}"));
            }
        }
        for (j, y) in me.generators().iter().enumerate() {
            let lhs = m.tran.apply(&md.act_e(&rb, y));
            let rhs = md.act_fix(b, &m.tran.apply(y));
            if lhs != rhs {
                rep.push_once(AX_MODULE_RES_TRAN, format!("fixed ({i}) on underlying {j}"));
            }
        }
    }
    rep
}

/// A box product together with the presentation of its levels.
///
/// User generators of the underlying level are the pairs `m_i ⊗ n_j` of
/// canonical generators. User generators of the fixed level are the pairs
/// `[m_i ⊗ n_j]` (transferred) followed by the pairs `x_k ⊗ y_l`.
#[derive(Clone, Debug)]
pub struct BoxProduct {
    pub mackey: MackeyZ2,
    pub left: MackeyZ2,
    pub right: MackeyZ2,
    /// Number of relation rows imposed on the fixed level, by kind.
    pub relation_counts: Vec<(String, usize)>,
}

impl BoxProduct {
    fn e_user(&self, m: &Element, n: &Element) -> Vec<Int> {
        bilinear_pairs(m, n)
    }

    fn fix_user_from_e(&self, m: &Element, n: &Element) -> Vec<Int> {
        let mut v = bilinear_pairs(m, n);
        v.extend(std::iter::repeat_n(Int::zero(), self.fix_pair_count()));
        v
    }

    fn fix_user_from_fix(&self, x: &Element, y: &Element) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.e_pair_count()];
        v.extend(bilinear_pairs(x, y));
        v
    }

    pub fn e_pair_count(&self) -> usize {
        self.left.level_e.ngens() * self.right.level_e.ngens()
    }

    pub fn fix_pair_count(&self) -> usize {
        self.left.level_fix.ngens() * self.right.level_fix.ngens()
    }

    /// `m ⊗ n` in the underlying level.
    pub fn e_pair(&self, m: &Element, n: &Element) -> Element {
        self.mackey.level_e.from_user(&self.e_user(m, n))
    }

    /// `[m ⊗ n]` in the fixed level, i.e. `tran(m ⊗ n)`.
    pub fn fix_e_pair(&self, m: &Element, n: &Element) -> Element {
        self.mackey.level_fix.from_user(&self.fix_user_from_e(m, n))
    }

    /// `x ⊗ y` in the fixed level.
    pub fn fix_pair(&self, x: &Element, y: &Element) -> Element {
        self.mackey.level_fix.from_user(&self.fix_user_from_fix(x, y))
    }

    /// Names of the fixed-level user generators.
    pub fn fix_generator_names(&self) -> Vec<String> {
        let (l, r) = (&self.left, &self.right);
        let mut out = Vec::new();
        for i in 0..l.level_e.ngens() {
            for j in 0..r.level_e.ngens() {
                out.push(format!("[e{i}⊗e{j}]"));
            }
        }
        for k in 0..l.level_fix.ngens() {
            for m in 0..r.level_fix.ngens() {
                out.push(format!("x{k}⊗y{m}"));
            }
        }
        out
    }
}

fn torsion_pair_rows(a: &FgAbGroup, b: &FgAbGroup, offset: usize, width: usize, rows: &mut Vec<Vec<Int>>) {
    for i in 0..a.ngens() {
        for j in 0..b.ngens() {
            let g = a.modulus(i).gcd(b.modulus(j));
            if !g.is_zero() {
                let mut r = vec![Int::zero(); width];
                r[offset + i * b.ngens() + j] = g;
                rows.push(r);
            }
        }
    }
}

/// Extra relations supplied by module structures, as user-coordinate rows.
#[derive(Clone, Debug, Default)]
struct ExtraRelations {
    e: Vec<Vec<Int>>,
    fix: Vec<Vec<Int>>,
}

fn box_with_relations(m: &MackeyZ2, n: &MackeyZ2, extra: ExtraRelations) -> Result<BoxProduct> {
    let (me, ne, mf, nf) = (&m.level_e, &n.level_e, &m.level_fix, &n.level_fix);
    let pe = me.ngens() * ne.ngens();
    let pf = mf.ngens() * nf.ngens();
    let width = pe + pf;
    let mut counts = Vec::new();

    let mut e_rows = Vec::new();
    torsion_pair_rows(me, ne, 0, pe, &mut e_rows);
    let extra_e_count = extra.e.len();
    e_rows.extend(extra.e.iter().cloned());
    let level_e = canonicalize(pe, &IntMatrix::from_rows(pe, e_rows));

    let mut rows = Vec::new();
    torsion_pair_rows(me, ne, 0, width, &mut rows);
    torsion_pair_rows(mf, nf, pe, width, &mut rows);
    counts.push(("torsion".to_string(), rows.len()));
    let pad_e = |v: Vec<Int>| {
        let mut r = v;
        r.extend(std::iter::repeat_n(Int::zero(), pf));
        r
    };
    let pad_fix = |v: Vec<Int>| {
        let mut r = vec![Int::zero(); pe];
        r.extend(v);
        r
    };
    let sub = |a: Vec<Int>, b: Vec<Int>| -> Vec<Int> { a.into_iter().zip(b).map(|(x, y)| x - y).collect() };
    let before = rows.len();
    for a in me.generators() {
        for b in ne.generators() {
            let r = sub(bilinear_pairs(&m.w.apply(&a), &n.w.apply(&b)), bilinear_pairs(&a, &b));
            rows.push(pad_e(r));
        }
    }
    counts.push(("w(m)⊗w(n) − m⊗n".to_string(), rows.len() - before));
    let before = rows.len();
    for x in mf.generators() {
        for b in ne.generators() {
            let r = sub(pad_fix(bilinear_pairs(&x, &n.tran.apply(&b))), pad_e(bilinear_pairs(&m.res.apply(&x), &b)));
            rows.push(r);
        }
    }
    for a in me.generators() {
        for y in nf.generators() {
            let r = sub(pad_fix(bilinear_pairs(&m.tran.apply(&a), &y)), pad_e(bilinear_pairs(&a, &n.res.apply(&y))));
            rows.push(r);
        }
    }
    counts.push(("x⊗tran(n) − res(x)⊗n, tran(m)⊗y − m⊗res(y)".to_string(), rows.len() - before));
    if extra_e_count > 0 || !extra.fix.is_empty() {
        counts.push(("module relations".to_string(), extra.e.len() + extra.fix.len()));
    }
    rows.extend(extra.e.into_iter().map(pad_e));
    rows.extend(extra.fix);
    let level_fix = canonicalize(width, &IntMatrix::from_rows(width, rows));

    let b = BoxProduct {
        mackey: MackeyZ2 {
            level_e: level_e.clone(),
            level_fix: level_fix.clone(),
            res: GroupHom::zero(&level_fix, &level_e),
            tran: GroupHom::zero(&level_e, &level_fix),
            w: GroupHom::identity(&level_e),
        },
        left: m.clone(),
        right: n.clone(),
        relation_counts: counts,
    };
    let pairs_e: Vec<(Element, Element)> = me
        .generators()
        .into_iter()
        .flat_map(|a| ne.generators().into_iter().map(move |c| (a.clone(), c)))
        .collect();
    let pairs_fix: Vec<(Element, Element)> = mf
        .generators()
        .into_iter()
        .flat_map(|x| nf.generators().into_iter().map(move |y| (x.clone(), y)))
        .collect();
    let w_images: Vec<Element> = pairs_e
        .iter()
        .map(|(a, c)| b.e_pair(&m.w.apply(a), &n.w.apply(c)))
        .collect();
    let w = GroupHom::from_user_images(&level_e, &level_e, &w_images)?;
    let tran_images: Vec<Element> = pairs_e.iter().map(|(a, c)| b.fix_e_pair(a, c)).collect();
    let tran = GroupHom::from_user_images(&level_e, &level_fix, &tran_images)?;
    let mut res_images: Vec<Element> = pairs_e
        .iter()
        .map(|(a, c)| level_e.add(&b.e_pair(a, c), &b.e_pair(&m.w.apply(a), &n.w.apply(c))))
        .collect();
    res_images.extend(
        pairs_fix
            .iter()
            .map(|(x, y)| b.e_pair(&m.res.apply(x), &n.res.apply(y))),
    );
    let res = GroupHom::from_user_images(&level_fix, &level_e, &res_images)?;
    Ok(BoxProduct {
        mackey: MackeyZ2::new(level_e, level_fix, res, tran, w)?,
        ..b
    })
}

/// The box product `M □ N`.
pub fn box_product(m: &MackeyZ2, n: &MackeyZ2) -> Result<BoxProduct> {
    box_with_relations(m, n, ExtraRelations::default())
}

/// `M □_A N` for a right `A`-module `M` and a left `A`-module `N`.
pub fn box_over_green(m: &GreenModule, n: &GreenModule) -> Result<BoxProduct> {
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::Unsupported("box over a Green functor needs a right and a left module".into()));
    }
    let (ga, gb) = (&m.green.mackey, &n.green.mackey);
    if !ga.level_e.same_type(&gb.level_e) || !ga.level_fix.same_type(&gb.level_fix) {
        return Err(Error::Shape("modules are over different Green functors".into()));
    }
    for (name, md) in [("right", m), ("left", n)] {
        let rep = validate_module(md);
        if !rep.is_valid() {
            return Err(Error::Validation(format!("{name} module: {:?}", rep.violations)));
        }
    }
    let a = &m.green;
    let (me, ne, mf, nf) = (&m.mackey.level_e, &n.mackey.level_e, &m.mackey.level_fix, &n.mackey.level_fix);
    let sub = |a: Vec<Int>, b: Vec<Int>| -> Vec<Int> { a.into_iter().zip(b).map(|(x, y)| x - y).collect() };
    let mut extra = ExtraRelations::default();
    for alpha in a.mackey.level_e.generators() {
        for x in me.generators() {
            for y in ne.generators() {
                extra.e.push(sub(
                    bilinear_pairs(&m.act_e(&alpha, &x), &y),
                    bilinear_pairs(&x, &n.act_e(&alpha, &y)),
                ));
            }
        }
    }
    let pe = me.ngens() * ne.ngens();
    for beta in a.mackey.level_fix.generators() {
        for x in mf.generators() {
            for y in nf.generators() {
                let mut row = vec![Int::zero(); pe];
                row.extend(sub(
                    bilinear_pairs(&m.act_fix(&beta, &x), &y),
                    bilinear_pairs(&x, &n.act_fix(&beta, &y)),
                ));
                extra.fix.push(row);
            }
        }
    }
    box_with_relations(&m.mackey, &n.mackey, extra)
}

/// `f □ g` between two box products built on the sources and targets of `f`, `g`.
pub fn box_hom(f: &MackeyHom, g: &MackeyHom, src: &BoxProduct, tgt: &BoxProduct) -> Result<MackeyHom> {
    let (m, n) = (&src.left, &src.right);
    let e_images: Vec<Element> = m
        .level_e
        .generators()
        .iter()
        .flat_map(|a| {
            n.level_e
                .generators()
                .into_iter()
                .map(move |c| tgt.e_pair(&f.f_e.apply(a), &g.f_e.apply(&c)))
        })
        .collect();
    let mut fix_images: Vec<Element> = m
        .level_e
        .generators()
        .iter()
        .flat_map(|a| {
            n.level_e
                .generators()
                .into_iter()
                .map(move |c| tgt.fix_e_pair(&f.f_e.apply(a), &g.f_e.apply(&c)))
        })
        .collect();
    fix_images.extend(m.level_fix.generators().iter().flat_map(|x| {
        n.level_fix
            .generators()
            .into_iter()
            .map(move |y| tgt.fix_pair(&f.f_fix.apply(x), &g.f_fix.apply(&y)))
    }));
    let f_e = GroupHom::from_user_images(&src.mackey.level_e, &tgt.mackey.level_e, &e_images)?;
    let f_fix = GroupHom::from_user_images(&src.mackey.level_fix, &tgt.mackey.level_fix, &fix_images)?;
    MackeyHom::new(&src.mackey, &tgt.mackey, f_e, f_fix)
}

/// The unit map `Burnside □ M → M`, with `k⊗m ↦ km`, `[k⊗m] ↦ tran(km)`,
/// `1⊗y ↦ y` and `t⊗y ↦ tran(res y)`.
pub fn burnside_unit_map(bm: &BoxProduct) -> Result<MackeyHom> {
    let m = &bm.right;
    let b = &bm.left;
    if !b.level_e.same_type(&FgAbGroup::free(1)) || !b.level_fix.same_type(&FgAbGroup::free(2)) {
        return Err(Error::Shape("left factor is not the Burnside functor".into()));
    }
    let e_images: Vec<Element> = m.level_e.generators();
    let mut fix_images: Vec<Element> = m.level_e.generators().iter().map(|a| m.tran.apply(a)).collect();
    fix_images.extend(m.level_fix.generators());
    fix_images.extend(
        m.level_fix
            .generators()
            .iter()
            .map(|y| m.tran.apply(&m.res.apply(y))),
    );
    let f_e = GroupHom::from_user_images(&bm.mackey.level_e, &m.level_e, &e_images)?;
    let f_fix = GroupHom::from_user_images(&bm.mackey.level_fix, &m.level_fix, &fix_images)?;
    MackeyHom::new(&bm.mackey, m, f_e, f_fix)
}

/// The symmetry `M □ N → N □ M`.
pub fn box_swap(mn: &BoxProduct, nm: &BoxProduct) -> Result<MackeyHom> {
    let (m, n) = (&mn.left, &mn.right);
    let e_images: Vec<Element> = m
        .level_e
        .generators()
        .iter()
        .flat_map(|a| n.level_e.generators().into_iter().map(move |c| nm.e_pair(&c, a)))
        .collect();
    let mut fix_images: Vec<Element> = m
        .level_e
        .generators()
        .iter()
        .flat_map(|a| n.level_e.generators().into_iter().map(move |c| nm.fix_e_pair(&c, a)))
        .collect();
    fix_images.extend(
        m.level_fix
            .generators()
            .iter()
            .flat_map(|x| n.level_fix.generators().into_iter().map(move |y| nm.fix_pair(&y, x))),
    );
    let f_e = GroupHom::from_user_images(&mn.mackey.level_e, &nm.mackey.level_e, &e_images)?;
    let f_fix = GroupHom::from_user_images(&mn.mackey.level_fix, &nm.mackey.level_fix, &fix_images)?;
    MackeyHom::new(&mn.mackey, &nm.mackey, f_e, f_fix)
}

/// A random finite Mackey functor with both levels of order at most `max_order`.
///
/// The underlying level is a sum of blocks `Z/n` with `w = ±1` and `(Z/n)²`
/// with `w` the swap. The fixed level is `A_w ⊕ F` for a random cyclic `F`,
/// with `tran` the projection to coinvariants, and `res` the additive norm on
/// `A_w` plus a random map `F → A^w`.
pub fn random_mackey<R: Rng>(rng: &mut R, max_order: u64) -> MackeyZ2 {
    loop {
        if let Some(m) = try_random_mackey(rng, max_order) {
            return m;
        }
    }
}

fn try_random_mackey<R: Rng>(rng: &mut R, max_order: u64) -> Option<MackeyZ2> {
    let mut blocks: Vec<(u64, u8)> = Vec::new();
    let mut order = 1u64;
    let count = rng.gen_range(1..=3);
    for _ in 0..count {
        let n = rng.gen_range(2..=4u64);
        let kind = rng.gen_range(0..3u8);
        let size = if kind == 2 { n * n } else { n };
        if order * size > max_order {
            continue;
        }
        order *= size;
        blocks.push((n, kind));
    }
    let mut parts = Vec::new();
    for &(n, kind) in &blocks {
        parts.push(FgAbGroup::cyclic(n as i64));
        if kind == 2 {
            parts.push(FgAbGroup::cyclic(n as i64));
        }
    }
    let ds = direct_sum(&parts);
    let a = ds.group.clone();
    let mut w_images: Vec<Element> = Vec::new();
    let mut idx = 0;
    for &(_, kind) in &blocks {
        let g = a.user_generator(idx);
        match kind {
            0 => w_images.push(g),
            1 => w_images.push(a.neg(&g)),
            _ => {
                let h = a.user_generator(idx + 1);
                w_images.push(h);
                w_images.push(g);
                idx += 1;
            }
        }
        idx += 1;
    }
    let w = GroupHom::from_user_images(&a, &a, &w_images).ok()?;
    let ic = invariants_and_coinvariants(&a, &w).ok()?;
    let coinv_order = ic.coinvariants.order()?;
    let budget = Int::from(max_order) / &coinv_order;
    let max_f = budget.to_string().parse::<u64>().unwrap_or(1).min(4);
    let f_order = rng.gen_range(1..=max_f.max(1));
    let f = FgAbGroup::cyclic(f_order as i64);
    let fix_sum = direct_sum(&[ic.coinvariants.clone(), f.clone()]);
    let fix = fix_sum.group.clone();
    // random map F → A^w
    let inv = &ic.invariants;
    let f_images: Vec<Element> = (0..f.ngens())
        .map(|k| {
            let d = f.modulus(k).clone();
            let y = inv.element(
                (0..inv.ngens())
                    .map(|i| Int::from(rng.gen_range(0..16i64)) % inv.modulus(i).max(&Int::one()))
                    .collect(),
            );
            // multiply into the d-torsion
            let exp = inv.torsion().last().cloned().unwrap_or_else(Int::one);
            let g = d.gcd(&exp);
            inv.scale(&(exp / g), &y)
        })
        .collect();
    let f_to_inv = GroupHom::from_images(&f, inv, f_images).ok()?;
    let res_coinv = ic.inclusion.compose(&ic.norm);
    let res_f = ic.inclusion.compose(&f_to_inv);
    let mut res_user: Vec<Element> = (0..ic.coinvariants.ngens())
        .map(|i| res_coinv.apply(&ic.coinvariants.generator(i)))
        .collect();
    res_user.extend((0..f.ngens()).map(|k| res_f.apply(&f.generator(k))));
    let res = GroupHom::from_user_images(&fix, &a, &res_user).ok()?;
    let tran = fix_sum.injections[0].compose(&ic.projection);
    MackeyZ2::new(a, fix, res, tran, w).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringalg::{gaussian_integers, integers, zmod};
    use rand::SeedableRng;

    #[test]
    fn burnside_is_valid() {
        assert!(validate_mackey(&burnside_mackey()).is_valid());
        assert!(validate_green(&burnside_green()).is_valid());
        let rep = validate_hermitian(&burnside_hermitian());
        assert!(rep.is_valid(), "{rep:?}");
    }

    #[test]
    fn constant_mackey_and_mutation() {
        let z = hermitian_from_ring(&integers()).unwrap();
        assert!(validate_mackey(&z.mackey).is_valid());
        assert_eq!(z.mackey.tran.matrix()[(0, 0)], Int::from(2));
        let bad = z.mackey.mutated("tran", 0, 0, 3).unwrap();
        assert!(validate_mackey(&bad).has(AX_DOUBLE_COSET));
    }

    #[test]
    fn hermitian_rings() {
        for r in [integers(), zmod(2), zmod(3), gaussian_integers()] {
            let h = hermitian_from_ring(&r).unwrap();
            let rep = validate_hermitian(&h);
            assert!(rep.is_valid(), "{rep:?}");
        }
        let f2 = hermitian_from_ring(&zmod(2)).unwrap();
        assert!(f2.mackey.tran.is_zero());
        let zi = hermitian_from_ring(&gaussian_integers()).unwrap();
        assert_eq!(zi.mackey.level_fix.free_rank(), 1);
        let a = zi.mackey.level_e.from_user(&[Int::from(3), Int::from(5)]);
        let t = zi.mackey.res.apply(&zi.mackey.tran.apply(&a));
        assert_eq!(zi.mackey.level_e.to_user(&t), vec![Int::from(6), Int::from(0)]);
    }

    #[test]
    fn burnside_norm() {
        let h = burnside_hermitian();
        let fix = &h.mackey.level_fix;
        let r = &h.ring_e;
        let n = |k: i64| h.norm(&r.from_int(&Int::from(k))).unwrap();
        assert_eq!(n(2), fix.element_i64(&[2, 1]));
        let ring = h.ring_fix.as_ref().unwrap();
        for a in -5..=5 {
            for b in -5..=5 {
                assert_eq!(n(a * b), ring.mul(&n(a), &n(b)));
                let ab = h.mackey.tran.apply(&r.from_int(&Int::from(a * b)));
                assert_eq!(n(a + b), fix.add(&fix.add(&n(a), &n(b)), &ab));
            }
        }
    }

    #[test]
    fn box_unit_and_symmetry() {
        let b = burnside_mackey();
        let z = hermitian_from_ring(&integers()).unwrap().mackey;
        for m in [&z, &b] {
            let bm = box_product(&b, m).unwrap();
            assert!(validate_mackey(&bm.mackey).is_valid());
            let u = burnside_unit_map(&bm).unwrap();
            assert!(u.is_isomorphism());
        }
        let f2 = hermitian_from_ring(&zmod(2)).unwrap().mackey;
        let ff = box_product(&f2, &f2).unwrap();
        assert!(validate_mackey(&ff.mackey).is_valid());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let m = random_mackey(&mut rng, 16);
            let n = random_mackey(&mut rng, 16);
            assert!(validate_mackey(&m).is_valid());
            let mn = box_product(&m, &n).unwrap();
            let nm = box_product(&n, &m).unwrap();
            assert!(box_swap(&mn, &nm).unwrap().is_isomorphism());
        }
    }

    #[test]
    fn box_over_burnside_is_plain_box() {
        let z = hermitian_from_ring(&integers()).unwrap().mackey;
        let b = burnside_mackey();
        let rel = box_over_green(
            &GreenModule::over_burnside(&z, Side::Right),
            &GreenModule::over_burnside(&b, Side::Left),
        )
        .unwrap();
        let plain = box_product(&z, &b).unwrap();
        let h = box_hom(&MackeyHom::identity(&z), &MackeyHom::identity(&b), &plain, &rel).unwrap();
        assert!(h.is_isomorphism());
    }
}
