//! Degreewise graded abelian groups, Tor over the integers, and monomial counts
//! in bigraded rings.

use num_traits::One;

use crate::error::{Error, Result};
use crate::fgab::{direct_sum, tor0_with_resolution, tor1_with_resolution, FgAbGroup, Resolution};
use crate::matrix::{Int, IntMatrix};

/// Groups in degrees `0..=window`.
#[derive(Clone, Debug)]
pub struct GradedAbGroup {
    degrees: Vec<FgAbGroup>,
}

impl GradedAbGroup {
    pub fn new(degrees: Vec<FgAbGroup>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Shape("a graded group needs at least degree 0".into()));
        }
        Ok(Self { degrees })
    }

    pub fn window(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, n: usize) -> &FgAbGroup {
        &self.degrees[n]
    }

    pub fn degrees(&self) -> &[FgAbGroup] {
        &self.degrees
    }

    /// `a` concentrated in degree 0.
    pub fn concentrated(a: FgAbGroup, window: usize) -> Self {
        let mut degrees = vec![FgAbGroup::trivial(); window + 1];
        degrees[0] = a;
        Self { degrees }
    }

    /// `coeff[x_1, ..., x_r]` with `|x_i| = gen_degrees[i] > 0`.
    pub fn polynomial(coeff: &FgAbGroup, gen_degrees: &[usize], window: usize) -> Result<Self> {
        if gen_degrees.contains(&0) {
            return Err(Error::Unbounded("a generator of degree 0 makes degree 0 infinite".into()));
        }
        let mut counts = vec![0usize; window + 1];
        counts[0] = 1;
        for &d in gen_degrees {
            for n in d..=window {
                counts[n] += counts[n - d];
            }
        }
        let degrees = counts
            .iter()
            .map(|&c| direct_sum(&vec![coeff.clone(); c]).group)
            .collect();
        Ok(Self { degrees })
    }

    /// Dimension over `F_p` when every degree is an elementary `p`-group.
    pub fn fp_dims(&self, p: u64) -> Option<Vec<usize>> {
        self.degrees.iter().map(|g| fp_dim(g, p)).collect()
    }

    pub fn same_type(&self, other: &GradedAbGroup) -> bool {
        self.degrees.len() == other.degrees.len()
            && self.degrees.iter().zip(&other.degrees).all(|(a, b)| a.same_type(b))
    }
}

/// Dimension of an elementary abelian `p`-group.
pub fn fp_dim(g: &FgAbGroup, p: u64) -> Option<usize> {
    let p = Int::from(p);
    (g.free_rank() == 0 && g.torsion().iter().all(|d| *d == p)).then(|| g.torsion().len())
}

/// A free resolution `F_1 → F_0` in each degree.
#[derive(Clone, Debug)]
pub struct GradedResolution {
    pub degrees: Vec<Resolution>,
}

impl GradedResolution {
    pub fn canonical(a: &GradedAbGroup) -> Self {
        Self {
            degrees: a.degrees.iter().map(Resolution::canonical).collect(),
        }
    }

    pub fn padded(a: &GradedAbGroup) -> Self {
        Self {
            degrees: a.degrees.iter().map(Resolution::padded).collect(),
        }
    }

    /// `Z[b, ε]/ε²` with `dε = 2`, resolving `F_2[b]` for `|b| = d`.
    pub fn epsilon(b_degree: usize, window: usize) -> Self {
        let degrees = (0..=window)
            .map(|n| {
                if n % b_degree == 0 {
                    Resolution {
                        rank0: 1,
                        rank1: 1,
                        boundary: IntMatrix::from_i64(1, &[&[2]]),
                    }
                } else {
                    Resolution {
                        rank0: 0,
                        rank1: 0,
                        boundary: IntMatrix::zeros(0, 0),
                    }
                }
            })
            .collect();
        Self { degrees }
    }

    pub fn resolved(&self) -> GradedAbGroup {
        GradedAbGroup {
            degrees: self.degrees.iter().map(Resolution::resolved).collect(),
        }
    }

    pub fn window(&self) -> usize {
        self.degrees.len() - 1
    }
}

/// `Tor_0` and `Tor_1` over the integers, degreewise.
#[derive(Clone, Debug)]
pub struct GradedTor {
    pub tor0: GradedAbGroup,
    pub tor1: GradedAbGroup,
}

impl GradedTor {
    /// `Tor_0` plus `Tor_1` shifted up by one, as `F_p`-dimensions.
    pub fn assembled_fp_dims(&self, p: u64) -> Option<Vec<usize>> {
        let t0 = self.tor0.fp_dims(p)?;
        let t1 = self.tor1.fp_dims(p)?;
        Some(
            (0..t0.len())
                .map(|n| t0[n] + if n > 0 { t1[n - 1] } else { 0 })
                .collect(),
        )
    }

    pub fn same_type(&self, other: &GradedTor) -> bool {
        self.tor0.same_type(&other.tor0) && self.tor1.same_type(&other.tor1)
    }
}

pub fn graded_tor_with(res: &GradedResolution, b: &GradedAbGroup, bound: usize) -> Result<GradedTor> {
    if res.window() < bound || b.window() < bound {
        return Err(Error::Shape(format!("window too small for degree bound {bound}")));
    }
    let mut tor0 = Vec::with_capacity(bound + 1);
    let mut tor1 = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let (mut t0, mut t1) = (Vec::new(), Vec::new());
        for i in 0..=n {
            t0.push(tor0_with_resolution(&res.degrees[i], &b.degrees[n - i]));
            t1.push(tor1_with_resolution(&res.degrees[i], &b.degrees[n - i]));
        }
        tor0.push(direct_sum(&t0).group);
        tor1.push(direct_sum(&t1).group);
    }
    Ok(GradedTor {
        tor0: GradedAbGroup { degrees: tor0 },
        tor1: GradedAbGroup { degrees: tor1 },
    })
}

/// Tor through the canonical resolution, cross-checked against a padded one.
#[derive(Clone, Debug)]
pub struct TorReport {
    pub tor: GradedTor,
    pub resolutions_agree: bool,
}

pub fn graded_tor(a: &GradedAbGroup, b: &GradedAbGroup, bound: usize) -> Result<TorReport> {
    if a.window() < bound {
        return Err(Error::Shape(format!("window too small for degree bound {bound}")));
    }
    let tor = graded_tor_with(&GradedResolution::canonical(a), b, bound)?;
    let other = graded_tor_with(&GradedResolution::padded(a), b, bound)?;
    Ok(TorReport {
        resolutions_agree: tor.same_type(&other),
        tor,
    })
}

/// A generator of a bigraded monomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialGen {
    pub name: String,
    pub degree: (i64, i64),
    pub invertible: bool,
    pub square_zero: bool,
}

impl MonomialGen {
    pub fn new(name: &str, degree: (i64, i64)) -> Self {
        Self {
            name: name.to_string(),
            degree,
            invertible: false,
            square_zero: false,
        }
    }

    pub fn invertible(mut self) -> Self {
        self.invertible = true;
        self
    }

    pub fn square_zero(mut self) -> Self {
        self.square_zero = true;
        self
    }
}

/// Monomials over `F_p` in generators with bidegrees `(n, k)`.
#[derive(Clone, Debug)]
pub struct MonomialRing {
    pub p: u64,
    pub gens: Vec<MonomialGen>,
}

impl MonomialRing {
    pub fn new(p: u64, gens: Vec<MonomialGen>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.invertible && g.square_zero) {
            return Err(Error::Validation(format!("{} cannot be both invertible and square-zero", g.name)));
        }
        if let Some(g) = gens.iter().find(|g| g.degree == (0, 0) && !g.square_zero) {
            return Err(Error::Unbounded(format!("{} has bidegree (0, 0)", g.name)));
        }
        Ok(Self { p, gens })
    }

    fn range(&self, i: usize, radius: i64) -> (i64, i64) {
        let g = &self.gens[i];
        if g.square_zero {
            (0, 1)
        } else if g.invertible {
            (-radius, radius)
        } else {
            (0, radius)
        }
    }

    /// Exponent vectors of bidegree `(n, k)` with every exponent at most `radius` in size.
    pub fn monomials_within(&self, n: i64, k: i64, radius: i64) -> Vec<Vec<i64>> {
        let r = self.gens.len();
        // generators solved for exactly: a maximal independent set of degrees
        let mut solved: Vec<usize> = Vec::new();
        for i in 0..r {
            let d = self.gens[i].degree;
            let independent = match solved.as_slice() {
                [] => d != (0, 0),
                [j] => {
                    let e = self.gens[*j].degree;
                    e.0 * d.1 - e.1 * d.0 != 0
                }
                _ => false,
            };
            if independent {
                solved.push(i);
            }
        }
        let free: Vec<usize> = (0..r).filter(|i| !solved.contains(i)).collect();
        let mut out = Vec::new();
        let mut exps = vec![0i64; r];
        self.enumerate(&free, 0, &solved, (n, k), radius, &mut exps, &mut out);
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        free: &[usize],
        pos: usize,
        solved: &[usize],
        rest: (i64, i64),
        radius: i64,
        exps: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if pos == free.len() {
            if let Some(sol) = self.solve(solved, rest) {
                let ok = solved.iter().zip(&sol).all(|(&i, &e)| {
                    let (lo, hi) = self.range(i, radius);
                    lo <= e && e <= hi
                });
                if ok {
                    for (&i, &e) in solved.iter().zip(&sol) {
                        exps[i] = e;
                    }
                    out.push(exps.clone());
                }
            }
            return;
        }
        let i = free[pos];
        let (lo, hi) = self.range(i, radius);
        let d = self.gens[i].degree;
        for e in lo..=hi {
            exps[i] = e;
            let next = (rest.0 - e * d.0, rest.1 - e * d.1);
            self.enumerate(free, pos + 1, solved, next, radius, exps, out);
        }
        exps[i] = 0;
    }

    fn solve(&self, solved: &[usize], target: (i64, i64)) -> Option<Vec<i64>> {
        match solved {
            [] => (target == (0, 0)).then(Vec::new),
            [i] => {
                let d = self.gens[*i].degree;
                let e = if d.0 != 0 { target.0 / d.0 } else { target.1 / d.1 };
                (e * d.0 == target.0 && e * d.1 == target.1).then(|| vec![e])
            }
            [i, j] => {
                let (a, b) = (self.gens[*i].degree, self.gens[*j].degree);
                let det = a.0 * b.1 - a.1 * b.0;
                let x = target.0 * b.1 - target.1 * b.0;
                let y = a.0 * target.1 - a.1 * target.0;
                (x % det == 0 && y % det == 0).then(|| vec![x / det, y / det])
            }
            _ => None,
        }
    }

    /// Number of monomials of bidegree `(n, k)`; an error when the count is infinite.
    pub fn count(&self, n: i64, k: i64) -> Result<usize> {
        let spread = self
            .gens
            .iter()
            .map(|g| g.degree.0.abs() + g.degree.1.abs())
            .max()
            .unwrap_or(0);
        let radius = 4 * (n.abs() + k.abs() + spread) + 8;
        let small = self.monomials_within(n, k, radius).len();
        let large = self.monomials_within(n, k, 2 * radius).len();
        if small != large {
            return Err(Error::Unbounded(format!("infinitely many monomials in bidegree ({n}, {k})")));
        }
        Ok(small)
    }

    pub fn format_monomial(&self, exps: &[i64]) -> String {
        let parts: Vec<String> = self
            .gens
            .iter()
            .zip(exps)
            .filter(|(_, &e)| e != 0)
            .map(|(g, &e)| if e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }
}

/// Dimensions of `π_{n,k}` for `n = 0..=bound`.
pub fn weight_slice(ring: &MonomialRing, k: i64, bound: usize) -> Result<Vec<usize>> {
    (0..=bound as i64).map(|n| ring.count(n, k)).collect()
}

/// Coefficients `F_p[u^{±1}]`, `|u| = (0, 2)`, with `x̃` in `(2, 1)`.
pub fn thr_fp_odd(p: u64) -> Result<MonomialRing> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Unsupported(format!("{p} is not an odd prime")));
    }
    MonomialRing::new(
        p,
        vec![MonomialGen::new("u", (0, 2)).invertible(), MonomialGen::new("x̃", (2, 1))],
    )
}

/// Coefficients generated by `a` in `(-1, -1)` and `u` in `(0, -1)`, with `x̃` in `(2, 1)`.
/// Only these coefficient classes are used.
pub fn thr_f2() -> MonomialRing {
    MonomialRing::new(
        2,
        vec![
            MonomialGen::new("a", (-1, -1)),
            MonomialGen::new("u", (0, -1)),
            MonomialGen::new("x̃", (2, 1)),
        ],
    )
    .expect("valid generators")
}

pub fn coefficient_ring(p: u64) -> Result<MonomialRing> {
    if p == 2 {
        Ok(thr_f2())
    } else {
        thr_fp_odd(p)
    }
}

/// Restriction of the weight-0 generators, recorded as data.
pub const FIXED_POINT_RESTRICTION: [(&str, &str); 2] = [("x̄", "x"), ("y", "0")];

/// Degreewise dimensions from two independent computations.
#[derive(Clone, Debug)]
pub struct DimsReport {
    pub computed: Vec<usize>,
    pub expected: Vec<usize>,
    /// Extra cross-checks (resolution independence and the like).
    pub checks: Vec<(String, bool)>,
}

impl DimsReport {
    pub fn agrees(&self) -> bool {
        self.computed == self.expected && self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn f2_poly(gen_degrees: &[usize], window: usize) -> GradedAbGroup {
    GradedAbGroup::polynomial(&FgAbGroup::cyclic(2), gen_degrees, window).expect("positive degrees")
}

/// Tor of `F_2[b_1]` with `F_2[b_2]` (`|b_i| = 2`), against monomials of `F_2[b_1, b_2, e]/e²`.
pub fn phi_thr_z_dims(bound: usize) -> Result<DimsReport> {
    let a = f2_poly(&[2], bound);
    let rep = graded_tor(&a, &a, bound)?;
    let quoted = graded_tor_with(&GradedResolution::epsilon(2, bound), &a, bound)?;
    let computed = rep
        .tor
        .assembled_fp_dims(2)
        .ok_or_else(|| Error::Validation("Tor is not an F_2-vector space".into()))?;
    let ring = MonomialRing::new(
        2,
        vec![
            MonomialGen::new("b₁", (2, 0)),
            MonomialGen::new("b₂", (2, 0)),
            MonomialGen::new("e", (1, 0)).square_zero(),
        ],
    )?;
    let expected = weight_slice(&ring, 0, bound)?;
    Ok(DimsReport {
        computed,
        expected,
        checks: vec![
            ("canonical and padded resolutions agree".into(), rep.resolutions_agree),
            ("ε-resolution agrees".into(), quoted.same_type(&rep.tor)),
            (
                "ε-resolution resolves F_2[b]".into(),
                GradedResolution::epsilon(2, bound).resolved().same_type(&a),
            ),
        ],
    })
}

/// `F_2[w] ⊗ F_2[w]` with `|w| = 1` for `p = 2`; zero for odd `p`.
pub fn phi_thr_fp_dims(p: u64, bound: usize) -> Result<DimsReport> {
    if !is_prime(p) {
        return Err(Error::Unsupported(format!("{p} is not prime")));
    }
    if p != 2 {
        return Ok(DimsReport {
            computed: vec![0; bound + 1],
            expected: vec![0; bound + 1],
            checks: vec![("contractible".into(), true)],
        });
    }
    let a = f2_poly(&[1], bound);
    let rep = graded_tor(&a, &a, bound)?;
    let computed = rep
        .tor
        .tor0
        .fp_dims(2)
        .ok_or_else(|| Error::Validation("tensor is not an F_2-vector space".into()))?;
    let ring = MonomialRing::new(2, vec![MonomialGen::new("w₁", (1, 0)), MonomialGen::new("w₂", (1, 0))])?;
    let expected = weight_slice(&ring, 0, bound)?;
    Ok(DimsReport {
        computed,
        expected,
        checks: vec![("canonical and padded resolutions agree".into(), rep.resolutions_agree)],
    })
}

pub fn phi_thr_f2_dims(bound: usize) -> Result<DimsReport> {
    phi_thr_fp_dims(2, bound)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `ν_p(k)` for `k ≠ 0`.
pub fn nu_p(p: u64, k: u64) -> u32 {
    assert!(k != 0 && p >= 2);
    let mut k = k;
    let mut v = 0;
    while k % p == 0 {
        k /= p;
        v += 1;
    }
    v
}

/// `π_n THH(Z)`, or its `p`-localization.
pub fn thh_z_table(n: u64, p: Option<u64>) -> Result<FgAbGroup> {
    if let Some(p) = p {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
    }
    if n == 0 {
        return Ok(FgAbGroup::free(1));
    }
    if n % 2 == 0 {
        return Ok(FgAbGroup::trivial());
    }
    let k = n.div_ceil(2);
    let order = match p {
        None => Int::from(k),
        Some(p) => num_traits::pow(Int::from(p), nu_p(p, k) as usize),
    };
    Ok(if order.is_one() {
        FgAbGroup::trivial()
    } else {
        FgAbGroup::from_invariants(0, &[order])
    })
}

/// `Z/k ≅ ⊕_p Z/p^{ν_p(k)}` for the odd-degree groups up to `k_max`.
pub fn thh_crt_check(k_max: u64) -> Result<bool> {
    for k in 1..=k_max {
        let n = 2 * k - 1;
        let whole = thh_z_table(n, None)?;
        let parts: Vec<FgAbGroup> = (2..=k)
            .filter(|&p| is_prime(p) && k % p == 0)
            .map(|p| thh_z_table(n, Some(p)))
            .collect::<Result<_>>()?;
        let sum = direct_sum(&parts).group;
        let product: Int = parts.iter().filter_map(|g| g.order()).product();
        if !whole.same_type(&sum) || product != Int::from(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tor_of_truncated_polynomial_rings() {
        let a = f2_poly(&[2], 20);
        let rep = graded_tor(&a, &a, 20).unwrap();
        assert!(rep.resolutions_agree);
        let t0 = rep.tor.tor0.fp_dims(2).unwrap();
        let t1 = rep.tor.tor1.fp_dims(2).unwrap();
        for m in 0..=10 {
            assert_eq!(t0[2 * m], m + 1);
            assert_eq!(t1[2 * m], m + 1);
        }
        assert!(t0.iter().skip(1).step_by(2).all(|&d| d == 0));
    }

    #[test]
    fn tor_edge_cases() {
        let z = GradedAbGroup::concentrated(FgAbGroup::free(1), 4);
        let b = f2_poly(&[1], 4);
        let rep = graded_tor(&z, &b, 4).unwrap();
        assert!(rep.tor.tor1.degrees().iter().all(FgAbGroup::is_trivial));
        let two = GradedAbGroup::concentrated(FgAbGroup::cyclic(2), 3);
        let three = GradedAbGroup::concentrated(FgAbGroup::cyclic(3), 3);
        let rep = graded_tor(&two, &three, 3).unwrap();
        assert!(rep.tor.tor0.degrees().iter().all(FgAbGroup::is_trivial));
        assert!(matches!(graded_tor(&two, &three, 5), Err(Error::Shape(_))));
    }

    #[test]
    fn geometric_fixed_points() {
        let rep = phi_thr_z_dims(20).unwrap();
        assert!(rep.agrees(), "{rep:?}");
        assert_eq!(rep.computed[0], 1);
        assert_eq!(rep.computed[5], 3);
        let rep = phi_thr_f2_dims(20).unwrap();
        assert!(rep.agrees());
        assert_eq!(rep.computed[3], 4);
        assert_eq!(phi_thr_fp_dims(3, 5).unwrap().computed, vec![0; 6]);
    }

    #[test]
    fn slices() {
        let r = thr_fp_odd(3).unwrap();
        let m = r.monomials_within(4, 0, 20);
        assert_eq!(m.len(), 1);
        assert_eq!(r.format_monomial(&m[0]), "u^-1·x̃^2");
        assert_eq!(r.count(2, 0).unwrap(), 0);
        let r2 = thr_f2();
        assert_eq!(r2.count(2, 0).unwrap(), 2);
        let dims = weight_slice(&r2, 0, 20).unwrap();
        assert!(dims.iter().enumerate().all(|(n, &d)| d == n / 2 + 1));
        let bad = MonomialRing::new(2, vec![MonomialGen::new("s", (1, 1)), MonomialGen::new("t", (-1, -1))]).unwrap();
        assert!(matches!(bad.count(0, 0), Err(Error::Unbounded(_))));
    }

    #[test]
    fn thh_values() {
        assert!(thh_z_table(0, None).unwrap().same_type(&FgAbGroup::free(1)));
        assert!(thh_z_table(3, None).unwrap().same_type(&FgAbGroup::cyclic(2)));
        assert!(thh_z_table(9, Some(3)).unwrap().is_trivial());
        assert!(thh_z_table(11, Some(3)).unwrap().same_type(&FgAbGroup::cyclic(3)));
        assert!(thh_crt_check(50).unwrap());
    }
}
