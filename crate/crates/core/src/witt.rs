//! The 2-truncated non-commutative Witt vectors `W(S)` on pairs `(a, c)`
//! with `a ∈ S` and `c ∈ (S⊗S)_{Z/2}`.
//!
//! ```text
//! (a, c) + (a', c') = (a + a', c + c' − [a⊗a'])
//! (a, c) · (a', c') = (aa', (a⊗a)c' + c(a'⊗a') + cc' + cτ(c'))
//! w₀(a, c) = a        w₁(a, c) = a⊗a + c + τ(c)
//! V(c) = (0, [c])     N(a) = (a, 0)
//! ```
//!
//! As an abelian group `W(S)` is presented on generators `N(e_i)` for the
//! canonical generators of `S` and `V(f_j)` for those of the coinvariants,
//! with `o_j V(f_j) = 0` and `d_i N(e_i) + C(d_i, 2) V([e_i ⊗ e_i]) = 0`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fgab::{invariant_factors_by_enumeration, Element, FgAbGroup, GroupHom};
use crate::mackey::{choose2, GreenModule, GreenZ2, HermitianMackey, MackeyZ2, Side};
use crate::matrix::{Int, IntMatrix};
use crate::ringalg::{flip_square, FlipSquare, PresRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittPair {
    pub a: Element,
    pub c: Element,
}

#[derive(Clone, Debug)]
pub struct WittRing {
    base: PresRing,
    square: FlipSquare,
    group: FgAbGroup,
}

impl WittRing {
    pub fn new(base: &PresRing) -> Result<Self> {
        let square = flip_square(base)?;
        let s = base.carrier();
        let coinv = &square.fixed.coinvariants;
        let (ns, nc) = (s.ngens(), coinv.ngens());
        let width = ns + nc;
        let mut rows = Vec::new();
        for j in 0..nc {
            let o = coinv.modulus(j);
            if !o.is_zero() {
                let mut r = vec![Int::zero(); width];
                r[ns + j] = o.clone();
                rows.push(r);
            }
        }
        for i in 0..ns {
            let d = s.modulus(i);
            if d.is_zero() {
                continue;
            }
            let e = s.generator(i);
            let v = square.fixed.projection.apply(&square.tensor.pair(&e, &e));
            let k = choose2(d);
            let mut r = vec![Int::zero(); width];
            r[i] = d.clone();
            for (j, c) in v.coords().iter().enumerate() {
                r[ns + j] = &k * c;
            }
            rows.push(r);
        }
        let group = crate::fgab::canonicalize(width, &IntMatrix::from_rows(width, rows));
        Ok(Self {
            base: base.clone(),
            square,
            group,
        })
    }

    pub fn base(&self) -> &PresRing {
        &self.base
    }

    pub fn square(&self) -> &FlipSquare {
        &self.square
    }

    pub fn coinvariants(&self) -> &FgAbGroup {
        &self.square.fixed.coinvariants
    }

    /// `W(S)` as a presented abelian group.
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    fn s(&self) -> &FgAbGroup {
        self.base.carrier()
    }

    fn class(&self, t: &Element) -> Element {
        self.square.fixed.projection.apply(t)
    }

    fn lift(&self, c: &Element) -> Element {
        self.square
            .fixed
            .projection
            .preimage(c)
            .expect("coinvariant projection is surjective")
    }

    fn aa(&self, a: &Element, b: &Element) -> Element {
        self.square.tensor.pair(a, b)
    }

    pub fn pair(&self, a: Element, c: Element) -> WittPair {
        WittPair { a, c }
    }

    pub fn zero(&self) -> WittPair {
        self.pair(self.s().zero(), self.coinvariants().zero())
    }

    pub fn one(&self) -> WittPair {
        self.pair(self.base.one(), self.coinvariants().zero())
    }

    pub fn norm(&self, a: &Element) -> WittPair {
        self.pair(a.clone(), self.coinvariants().zero())
    }

    /// `V(c)` for a coinvariant class `c`.
    pub fn verschiebung(&self, c: &Element) -> WittPair {
        self.pair(self.s().zero(), c.clone())
    }

    /// `V([t])` for a tensor `t ∈ S⊗S`.
    pub fn verschiebung_of_tensor(&self, t: &Element) -> WittPair {
        self.verschiebung(&self.class(t))
    }

    pub fn add(&self, x: &WittPair, y: &WittPair) -> WittPair {
        let c = self.coinvariants();
        let cross = self.class(&self.aa(&x.a, &y.a));
        self.pair(self.s().add(&x.a, &y.a), c.sub(&c.add(&x.c, &y.c), &cross))
    }

    pub fn neg(&self, x: &WittPair) -> WittPair {
        let c = self.coinvariants();
        let sq = self.class(&self.aa(&x.a, &x.a));
        self.pair(self.s().neg(&x.a), c.sub(&c.neg(&x.c), &sq))
    }

    pub fn sub(&self, x: &WittPair, y: &WittPair) -> WittPair {
        self.add(x, &self.neg(y))
    }

    /// `n·(a, c) = (na, nc − C(n,2)[a⊗a])`
    pub fn scale(&self, n: &Int, x: &WittPair) -> WittPair {
        let c = self.coinvariants();
        let sq = self.class(&self.aa(&x.a, &x.a));
        self.pair(
            self.s().scale(n, &x.a),
            c.sub(&c.scale(n, &x.c), &c.scale(&choose2(n), &sq)),
        )
    }

    pub fn mul(&self, x: &WittPair, y: &WittPair) -> WittPair {
        let r = &self.square.ring;
        let t = &self.square.tensor.group;
        let (l, l2) = (self.lift(&x.c), self.lift(&y.c));
        let terms = [
            r.mul(&self.aa(&x.a, &x.a), &l2),
            r.mul(&l, &self.aa(&y.a, &y.a)),
            r.mul(&l, &l2),
            r.mul(&l, &self.square.tau.apply(&l2)),
        ];
        let c = self.class(&t.sum(terms.iter()));
        self.pair(self.base.mul(&x.a, &y.a), c)
    }

    pub fn ghost0(&self, x: &WittPair) -> Element {
        x.a.clone()
    }

    pub fn ghost1(&self, x: &WittPair) -> Element {
        let fixed = &self.square.fixed;
        let n = fixed.inclusion.apply(&fixed.norm.apply(&x.c));
        self.square.tensor.group.add(&self.aa(&x.a, &x.a), &n)
    }

    /// Coordinates of a pair in [`Self::group`].
    pub fn to_coords(&self, x: &WittPair) -> Element {
        let n = x.a.coords();
        let s = self.s();
        let c = self.coinvariants();
        let mut v = x.c.clone();
        for i in 0..n.len() {
            if n[i].is_zero() {
                continue;
            }
            let ei = s.generator(i);
            v = c.add(&v, &c.scale(&choose2(&n[i]), &self.class(&self.aa(&ei, &ei))));
            for j in i + 1..n.len() {
                if n[j].is_zero() {
                    continue;
                }
                let ej = s.generator(j);
                v = c.add(&v, &c.scale(&(&n[i] * &n[j]), &self.class(&self.aa(&ei, &ej))));
            }
        }
        let mut user: Vec<Int> = n.to_vec();
        user.extend(v.coords().iter().cloned());
        self.group.from_user(&user)
    }

    /// The pair represented by an element of [`Self::group`].
    pub fn from_coords(&self, w: &Element) -> WittPair {
        let user = self.group.to_user(w);
        let ns = self.s().ngens();
        let mut acc = self.zero();
        for (i, n) in user[..ns].iter().enumerate() {
            if !n.is_zero() {
                acc = self.add(&acc, &self.scale(n, &self.norm(&self.s().generator(i))));
            }
        }
        let c = self.coinvariants().element(user[ns..].to_vec());
        self.add(&acc, &self.verschiebung(&c))
    }

    /// Pairs of a finite `W(S)`.
    pub fn elements(&self) -> Option<Vec<WittPair>> {
        let sa = self.s().elements()?;
        let cs = self.coinvariants().elements()?;
        Some(
            sa.iter()
                .flat_map(|a| cs.iter().map(move |c| WittPair { a: a.clone(), c: c.clone() }))
                .collect(),
        )
    }

    /// Invariant factors of a finite `W(S)` by enumerating its elements.
    pub fn decompose(&self) -> Result<Vec<Int>> {
        let elems = self
            .elements()
            .ok_or_else(|| Error::Unsupported("decomposition needs a finite base ring".into()))?;
        Ok(invariant_factors_by_enumeration(&elems, &self.zero(), |x, y| self.add(x, y)))
    }

    pub fn format(&self, x: &WittPair) -> String {
        format!(
            "({}, {})",
            self.s().format_element(&x.a),
            self.coinvariants().format_element(&x.c)
        )
    }

    /// `w₀` as a homomorphism `W(S) → S`.
    pub fn ghost0_hom(&self) -> Result<GroupHom> {
        let ns = self.s().ngens();
        let images: Vec<Element> = (0..ns)
            .map(|i| self.s().generator(i))
            .chain((0..self.coinvariants().ngens()).map(|_| self.s().zero()))
            .collect();
        GroupHom::from_user_images(&self.group, self.s(), &images)
    }

    /// `w₁` as a homomorphism `W(S) → S⊗S`.
    pub fn ghost1_hom(&self) -> Result<GroupHom> {
        let images: Vec<Element> = self.user_generator_pairs().iter().map(|p| self.ghost1(p)).collect();
        GroupHom::from_user_images(&self.group, &self.square.tensor.group, &images)
    }

    /// `V` as a homomorphism from the coinvariants.
    pub fn verschiebung_hom(&self) -> Result<GroupHom> {
        let c = self.coinvariants();
        let images = c
            .generators()
            .iter()
            .map(|f| self.to_coords(&self.verschiebung(f)))
            .collect();
        GroupHom::from_images(c, &self.group, images)
    }

    /// The pairs `N(e_i)`, `V(f_j)` naming the user generators of [`Self::group`].
    pub fn user_generator_pairs(&self) -> Vec<WittPair> {
        let s = self.s();
        let mut out: Vec<WittPair> = s.generators().iter().map(|e| self.norm(e)).collect();
        out.extend(self.coinvariants().generators().iter().map(|f| self.verschiebung(f)));
        out
    }

    /// The map `W(S) → W(S')` induced by a ring map `f: S → S'`.
    pub fn induced_hom(&self, target: &WittRing, f: &GroupHom) -> Result<GroupHom> {
        let images: Vec<Element> = self
            .user_generator_pairs()
            .iter()
            .map(|p| target.to_coords(&self.map_pair(target, f, p)))
            .collect();
        GroupHom::from_user_images(&self.group, &target.group, &images)
    }

    /// `(a, c) ↦ (f(a), (f⊗f)c)`.
    pub fn map_pair(&self, target: &WittRing, f: &GroupHom, x: &WittPair) -> WittPair {
        let lift = self.lift(&x.c);
        let user = self.square.tensor.group.to_user(&lift);
        let s = self.s();
        let n = s.ngens();
        let tt = &target.square.tensor.group;
        let mut acc = tt.zero();
        for (k, coef) in user.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (i, j) = (k / n, k % n);
            let t = target.aa(&f.apply(&s.generator(i)), &f.apply(&s.generator(j)));
            acc = tt.add(&acc, &tt.scale(coef, &t));
        }
        target.pair(f.apply(&x.a), target.class(&acc))
    }
}

/// The Witt Green functor: `S⊗S` with the flip over `W(S)`, `res = w₁`, `tran = V`.
#[derive(Clone, Debug)]
pub struct WittGreen {
    pub ring: WittRing,
    pub green: GreenZ2,
    /// Invariant factors by enumeration, for finite `S` when requested.
    pub decomposition: Option<Vec<Int>>,
}

pub fn witt_green(s: &PresRing, decompose: bool) -> Result<WittGreen> {
    let ring = WittRing::new(s)?;
    let decomposition = if decompose {
        if !s.carrier().is_finite() {
            return Err(Error::Unsupported("--decompose needs a finite base ring".into()));
        }
        Some(ring.decompose()?)
    } else {
        None
    };
    let sq = ring.square().clone();
    let w_group = ring.group().clone();
    let res = ring.ghost1_hom()?;
    let tran = ring.verschiebung_hom()?.compose(&sq.fixed.projection);
    let mackey = MackeyZ2::new(sq.tensor.group.clone(), w_group.clone(), res, tran, sq.tau.clone())?;
    let gens: Vec<WittPair> = w_group.generators().iter().map(|g| ring.from_coords(g)).collect();
    let mul = gens
        .iter()
        .map(|x| gens.iter().map(|y| ring.to_coords(&ring.mul(x, y))).collect())
        .collect();
    let ring_fix = PresRing::new(w_group, mul, ring.to_coords(&ring.one()), None)?;
    Ok(WittGreen {
        green: GreenZ2 {
            mackey,
            ring_e: sq.ring.clone(),
            ring_fix,
        },
        ring,
        decomposition,
    })
}

/// The right and left actions of the Witt Green functor of `H.ring_e` on `H`.
///
/// Left: `(a⊗a')·b = a b w(a')`, `N(a)·x = a·x`, `V(c)·x = tran(μ(c ⊗ res x))`.
/// Right: `b·(a⊗a') = w(a') b a`, `x·N(a) = w(a)·x`, `x·V(c) = tran(μʳ(res x ⊗ c))`.
pub fn hermitian_witt_actions(h: &HermitianMackey, wg: &WittGreen) -> Result<(GreenModule, GreenModule)> {
    let r = &h.ring_e;
    let m = &h.mackey;
    let ring = &wg.ring;
    let sq = ring.square();
    let s = r.carrier();
    let n = s.ngens();
    let tensor_terms = |t: &Element| -> Vec<(Int, Element, Element)> {
        sq.tensor
            .group
            .to_user(t)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c, s.generator(k / n), s.generator(k % n)))
            .collect()
    };
    // μ(a⊗a'⊗b) = a b w(a') and μʳ(b⊗a⊗a') = w(a') b a
    let mu = |t: &Element, b: &Element, side: Side| -> Element {
        let mut acc = s.zero();
        for (c, a, a2) in tensor_terms(t) {
            let v = match side {
                Side::Left => r.mul3(&a, b, &m.w.apply(&a2)),
                Side::Right => r.mul3(&m.w.apply(&a2), b, &a),
            };
            acc = s.add(&acc, &s.scale(&c, &v));
        }
        acc
    };
    let lift = |c: &Element| sq.fixed.projection.preimage(c).expect("surjective");
    let fix = &m.level_fix;
    let build = |side: Side| -> GreenModule {
        let act_e = sq
            .tensor
            .group
            .generators()
            .iter()
            .map(|alpha| s.generators().iter().map(|b| mu(alpha, b, side)).collect())
            .collect();
        let act_fix = ring
            .group()
            .generators()
            .iter()
            .map(|beta| {
                let user = ring.group().to_user(beta);
                fix.generators()
                    .iter()
                    .map(|x| {
                        let mut acc = fix.zero();
                        for (i, k) in user[..n].iter().enumerate() {
                            if k.is_zero() {
                                continue;
                            }
                            let e = s.generator(i);
                            let a = match side {
                                Side::Left => e,
                                Side::Right => m.w.apply(&e),
                            };
                            acc = fix.add(&acc, &fix.scale(k, &h.act(&a, x)));
                        }
                        for (j, k) in user[n..].iter().enumerate() {
                            if k.is_zero() {
                                continue;
                            }
                            let f = ring.coinvariants().generator(j);
                            let v = m.tran.apply(&mu(&lift(&f), &m.res.apply(x), side));
                            acc = fix.add(&acc, &fix.scale(k, &v));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        GreenModule {
            green: wg.green.clone(),
            mackey: m.clone(),
            side,
            act_e,
            act_fix,
        }
    };
    Ok((build(Side::Right), build(Side::Left)))
}

/// For `S` with 2 invertible: `(w₀, w₁)` is a ring isomorphism `W(S) → S × (S⊗S)^{Z/2}`,
/// checked by enumeration on a finite `S`.
pub fn two_inverted_isomorphism(ring: &WittRing) -> Result<bool> {
    let elems = ring
        .elements()
        .ok_or_else(|| Error::Unsupported("needs a finite base ring".into()))?;
    let sq = ring.square();
    let inv = &sq.fixed;
    let image = |x: &WittPair| -> Option<(Element, Element)> {
        let g1 = ring.ghost1(x);
        inv.inclusion.preimage(&g1).map(|y| (ring.ghost0(x), y))
    };
    let mut seen = std::collections::BTreeSet::new();
    for x in &elems {
        match image(x) {
            Some(v) => {
                seen.insert(v);
            }
            None => return Ok(false),
        }
    }
    let target_order = ring.base().carrier().order().zip(inv.invariants.order());
    let Some((a, b)) = target_order else {
        return Ok(false);
    };
    if Int::from(seen.len()) != a * b || seen.len() != elems.len() {
        return Ok(false);
    }
    // multiplicative and additive on all pairs
    for x in &elems {
        for y in &elems {
            let (p, q) = (ring.mul(x, y), ring.add(x, y));
            if ring.ghost0(&p) != ring.base().mul(&x.a, &y.a)
                || ring.ghost1(&p) != sq.ring.mul(&ring.ghost1(x), &ring.ghost1(y))
                || ring.ghost1(&q) != sq.tensor.group.add(&ring.ghost1(x), &ring.ghost1(y))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{hermitian_from_ring, validate_green, validate_module};
    use crate::ringalg::{integers, zmod};

    #[test]
    fn witt_of_f2_is_z4() {
        let w = WittRing::new(&zmod(2)).unwrap();
        assert_eq!(w.decompose().unwrap(), vec![Int::from(4)]);
        assert_eq!(w.group().torsion(), &[Int::from(4)][..]);
        let one = w.one();
        let two = w.add(&one, &one);
        assert_eq!(two, w.verschiebung(&w.coinvariants().generator(0)));
    }

    #[test]
    fn addition_formula() {
        let w = WittRing::new(&integers()).unwrap();
        let one = w.one();
        let two = w.add(&one, &one);
        assert_eq!(two.a, w.base().from_int(&Int::from(2)));
        assert_eq!(two.c, w.coinvariants().element_i64(&[-1]));
    }

    #[test]
    fn coordinates_roundtrip() {
        for s in [integers(), zmod(2), zmod(4), zmod(3)] {
            let w = WittRing::new(&s).unwrap();
            let s_elems: Vec<Element> = (-3..=3).map(|k| s.from_int(&Int::from(k))).collect();
            for a in &s_elems {
                for k in -3..=3 {
                    let x = w.pair(a.clone(), w.coinvariants().element_i64(&[k]));
                    assert_eq!(w.from_coords(&w.to_coords(&x)), x);
                }
            }
            for x in w.user_generator_pairs() {
                for y in w.user_generator_pairs() {
                    let lhs = w.to_coords(&w.add(&x, &y));
                    let rhs = w.group().add(&w.to_coords(&x), &w.to_coords(&y));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn witt_green_validates() {
        for s in [integers(), zmod(2), zmod(3)] {
            let wg = witt_green(&s, false).unwrap();
            let rep = validate_green(&wg.green);
            assert!(rep.is_valid(), "{rep:?}");
        }
    }

    #[test]
    fn witt_actions_are_modules() {
        for s in [integers(), zmod(2), zmod(3)] {
            let h = hermitian_from_ring(&s).unwrap();
            let wg = witt_green(&s, false).unwrap();
            let (right, left) = hermitian_witt_actions(&h, &wg).unwrap();
            let rep = validate_module(&left);
            assert!(rep.is_valid(), "left {rep:?}");
            let rep = validate_module(&right);
            assert!(rep.is_valid(), "right {rep:?}");
        }
    }

    #[test]
    fn two_inverted() {
        let w = WittRing::new(&zmod(3)).unwrap();
        assert!(two_inverted_isomorphism(&w).unwrap());
        let w = WittRing::new(&zmod(2)).unwrap();
        assert!(!two_inverted_isomorphism(&w).unwrap());
    }
}
