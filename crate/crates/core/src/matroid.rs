//! Matroids, their minors and polytopes, and the valuation catalog: Tutte,
//! characteristic polynomial, beta, CSM weights, the rank-jump invariant,
//! the unique-basis character, the volume polynomial, and flag matroids.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gp::{all_subsets, SubmodularGp};
use crate::label::{set_key, Label, LabelSet};
use crate::osp::OrderedSetPartition;
use crate::poly::{binomial, multinomial, BiPoly, FlatPoly, UniPoly};
use crate::rational::Rat;

/// A matroid given by its bases; the exchange axiom is checked exhaustively
/// at construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matroid {
    ground: LabelSet,
    bases: Vec<LabelSet>,
}

impl Matroid {
    pub fn new(ground: LabelSet, bases: Vec<LabelSet>) -> Result<Self> {
        let mut bases: Vec<LabelSet> = bases;
        bases.sort();
        bases.dedup();
        if bases.is_empty() {
            return Err(Error::axiom("a matroid needs at least one basis"));
        }
        let size = bases[0].len();
        for b in &bases {
            if b.len() != size {
                return Err(Error::axiom(format!(
                    "bases {{{}}} and {{{}}} have different sizes",
                    set_key(&bases[0]),
                    set_key(b)
                )));
            }
            if !b.is_subset(&ground) {
                return Err(Error::axiom(format!(
                    "basis {{{}}} is not contained in the ground set",
                    set_key(b)
                )));
            }
        }
        // basis exchange: for a in A - B there is b in B - A with A - a + b a basis
        for a_set in &bases {
            for b_set in &bases {
                for a in a_set.difference(b_set) {
                    let found = b_set.difference(a_set).any(|b| {
                        let mut cand = a_set.clone();
                        cand.remove(a);
                        cand.insert(b.clone());
                        bases.binary_search(&cand).is_ok()
                    });
                    if !found {
                        return Err(Error::axiom(format!(
                            "basis exchange fails for A={{{}}}, B={{{}}}, a={a}",
                            set_key(a_set),
                            set_key(b_set)
                        )));
                    }
                }
            }
        }
        Ok(Matroid { ground, bases })
    }

    /// The uniform matroid `U_{r,n}` on ground set `{1, ..., n}`.
    pub fn uniform(rank: usize, n: usize) -> Self {
        let ground: LabelSet = (1..=n as u64).map(Label::from).collect();
        Self::uniform_on(rank, ground)
    }

    pub fn uniform_on(rank: usize, ground: LabelSet) -> Self {
        let bases: Vec<LabelSet> = ground
            .iter()
            .cloned()
            .combinations(rank)
            .map(|c| c.into_iter().collect())
            .collect();
        Matroid { ground, bases }
    }

    pub fn ground(&self) -> &LabelSet {
        &self.ground
    }

    pub fn bases(&self) -> &[LabelSet] {
        &self.bases
    }

    pub fn rank(&self) -> usize {
        self.bases[0].len()
    }

    /// Rank function `r(J) = max_B |J ∩ B|`.
    pub fn rank_of(&self, j: &LabelSet) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersection(j).count())
            .max()
            .unwrap()
    }

    pub fn is_loop(&self, e: &Label) -> bool {
        self.bases.iter().all(|b| !b.contains(e))
    }

    pub fn has_loop(&self) -> bool {
        self.ground.iter().any(|e| self.is_loop(e))
    }

    pub fn is_coloop(&self, e: &Label) -> bool {
        self.bases.iter().all(|b| b.contains(e))
    }

    /// Restriction to `s`: bases are the maximal intersections `B ∩ S`.
    pub fn restrict(&self, s: &LabelSet) -> Matroid {
        let r = self.rank_of(s);
        let mut bases: Vec<LabelSet> = self
            .bases
            .iter()
            .map(|b| b.intersection(s).cloned().collect::<LabelSet>())
            .filter(|x| x.len() == r)
            .collect();
        bases.sort();
        bases.dedup();
        Matroid { ground: s.clone(), bases }
    }

    /// Contraction of `s`: bases complete a basis of the restriction.
    pub fn contract(&self, s: &LabelSet) -> Matroid {
        let t: LabelSet = self.ground.difference(s).cloned().collect();
        let rs = self.rank_of(s);
        let mut bases: Vec<LabelSet> = self
            .bases
            .iter()
            .filter(|b| b.intersection(s).count() == rs)
            .map(|b| b.intersection(&t).cloned().collect::<LabelSet>())
            .collect();
        bases.sort();
        bases.dedup();
        Matroid { ground: t, bases }
    }

    /// Deletion of a single element (restriction to the complement).
    pub fn delete(&self, e: &Label) -> Matroid {
        let mut s = self.ground.clone();
        s.remove(e);
        self.restrict(&s)
    }

    /// The minor `M[A, B] = (M|_B)/_A` for `A ⊆ B`.
    pub fn minor(&self, a: &LabelSet, b: &LabelSet) -> Result<Matroid> {
        if !a.is_subset(b) || !b.is_subset(&self.ground) {
            return Err(Error::invalid("minor requires A ⊆ B ⊆ ground"));
        }
        Ok(self.restrict(b).contract(a))
    }

    /// Direct sum on disjoint ground sets.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        if !self.ground.is_disjoint(&other.ground) {
            return Err(Error::ground("direct sum requires disjoint ground sets"));
        }
        let ground: LabelSet = self.ground.union(&other.ground).cloned().collect();
        let bases = self
            .bases
            .iter()
            .cartesian_product(other.bases.iter())
            .map(|(b1, b2)| b1.union(b2).cloned().collect())
            .collect();
        Ok(Matroid { ground, bases })
    }

    /// The matroid polytope: `z` is the rank function, vertices are the
    /// indicator vectors of bases.
    pub fn to_gp(&self) -> SubmodularGp {
        let z: BTreeMap<LabelSet, Rat> = all_subsets(&self.ground)
            .into_iter()
            .map(|a| {
                let r = Rat::from(self.rank_of(&a) as i64);
                (a, r)
            })
            .collect();
        SubmodularGp::new(self.ground.clone(), z).expect("rank functions are submodular")
    }

    /// Flats: subsets whose closure is themselves.
    pub fn flats(&self) -> Vec<LabelSet> {
        all_subsets(&self.ground)
            .into_iter()
            .filter(|f| {
                let rf = self.rank_of(f);
                self.ground
                    .iter()
                    .filter(|e| !f.contains(*e))
                    .all(|e| {
                        let mut fe = f.clone();
                        fe.insert(e.clone());
                        self.rank_of(&fe) == rf + 1
                    })
            })
            .collect()
    }

    /// Corank-nullity Tutte polynomial
    /// `T_M(x,y) = Σ_A (x-1)^{r - r(A)} (y-1)^{|A| - r(A)}`.
    pub fn tutte(&self) -> BiPoly {
        let r = self.rank();
        let mut out = BiPoly::zero();
        for a in all_subsets(&self.ground) {
            let ra = self.rank_of(&a);
            out = out + BiPoly::xm1_ym1(r - ra, a.len() - ra);
        }
        out
    }

    /// Characteristic polynomial via Möbius recursion over the flat lattice;
    /// identically zero when the matroid has a loop.
    pub fn char_poly(&self) -> UniPoly {
        if self.has_loop() {
            return UniPoly::zero();
        }
        let flats = self.flats();
        // mobius[i] = μ(∅, F_i), recursively: μ(∅,∅) = 1, sums to 0 on intervals
        let mut mobius: Vec<Rat> = vec![Rat::zero(); flats.len()];
        for i in 0..flats.len() {
            if flats[i].is_empty() {
                mobius[i] = Rat::one();
                continue;
            }
            let mut acc = Rat::zero();
            for j in 0..flats.len() {
                if j != i && flats[j].is_subset(&flats[i]) {
                    acc += mobius[j].clone();
                }
            }
            mobius[i] = -acc;
        }
        let r = self.rank();
        let mut out = UniPoly::zero();
        for (f, mu) in flats.iter().zip(mobius) {
            out.add_term(r - self.rank_of(f), mu);
        }
        out
    }

    /// Reduced characteristic polynomial `χ/(t-1)`; exact division.
    pub fn reduced_char(&self) -> Result<UniPoly> {
        let chi = self.char_poly();
        if chi.is_zero() {
            return Ok(UniPoly::zero());
        }
        let tm1: UniPoly = [(1usize, Rat::one()), (0usize, -Rat::one())]
            .into_iter()
            .collect();
        chi.div_exact(&tm1)
    }

    /// Unsigned `i`-th coefficient of the reduced characteristic polynomial.
    pub fn mu_i(&self, i: usize) -> Result<Rat> {
        Ok(self.reduced_char()?.coeff(i).abs())
    }

    /// Beta invariant under the chosen convention.
    pub fn beta(&self, convention: BetaConvention) -> Result<Rat> {
        match convention {
            BetaConvention::Crapo => Ok(self.tutte().coeff(1, 0)),
            BetaConvention::Paper => Ok(self.reduced_char()?.coeff(0).abs()),
        }
    }

    /// CSM weight of an ordered set partition `S_1 | ... | S_k`:
    /// `(-1)^{d-k} Π_{i=0}^{k-1} β(M[F_i, F_{i+1}])` with `F_i` the prefix
    /// unions and `d = rk(M)`. Crapo beta throughout; the factor vanishes on
    /// non-flat prefixes because the contraction then has a loop.
    pub fn csm_weight(&self, osp: &OrderedSetPartition) -> Result<Rat> {
        if osp.ground() != self.ground {
            return Err(Error::ground("ordered set partition on the wrong ground set"));
        }
        let d = self.rank();
        let k = osp.num_blocks();
        let mut prod = Rat::one();
        let mut prefix = LabelSet::new();
        for block in osp.blocks() {
            let mut next = prefix.clone();
            next.extend(block.iter().cloned());
            let minor = self.minor(&prefix, &next)?;
            prod *= minor.beta(BetaConvention::Crapo)?;
            if prod.is_zero() {
                return Ok(Rat::zero());
            }
            prefix = next;
        }
        let sign = if (d + k).is_multiple_of(2) { Rat::one() } else { -Rat::one() };
        Ok(sign * prod)
    }

    /// The rank-jump histogram over all linear orders of the ground set.
    pub fn g_invariant(&self) -> GInvariant {
        let elems: Vec<Label> = self.ground.iter().cloned().collect();
        let n = elems.len();
        let mut counts: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
        for perm in elems.iter().cloned().permutations(n) {
            let mut seq = Vec::with_capacity(n);
            let mut prefix = LabelSet::new();
            let mut prev = 0usize;
            for e in perm {
                prefix.insert(e);
                let r = self.rank_of(&prefix);
                seq.push((r - prev) as u8);
                prev = r;
            }
            *counts.entry(seq).or_insert(0) += 1;
        }
        GInvariant { n, counts }
    }

    /// Unique-basis character: 1 iff the matroid has exactly one basis.
    pub fn bjr_character(&self) -> Rat {
        if self.bases.len() == 1 {
            Rat::one()
        } else {
            Rat::zero()
        }
    }

    /// Volume polynomial in the variables `t_F` over nonempty proper flats.
    ///
    /// Sums over flags `∅ = F_0 ⊂ F_1 ⊂ ... ⊂ F_k ⊂ F_{k+1} = I` of nonempty
    /// proper flats and compositions `d_1 + ... + d_k = d` with
    /// `d = rk(M) - 1`, with coefficient
    /// `(-1)^{d-k} (d; d_1..d_k) Π_i C(d_i - 1, D_i - rk F_i) μ^{D_i - rk F_i}(M[F_i, F_{i+1}])`
    /// where `D_i` is the partial sum of the `d_j`.
    pub fn volume_polynomial(&self) -> Result<FlatPoly> {
        if self.has_loop() {
            return Err(Error::invalid("volume polynomial requires a loopless matroid"));
        }
        let d = self
            .rank()
            .checked_sub(1)
            .ok_or_else(|| Error::invalid("volume polynomial requires rank at least 1"))?;
        let proper_flats: Vec<LabelSet> = self
            .flats()
            .into_iter()
            .filter(|f| !f.is_empty() && *f != self.ground)
            .collect();
        let mut out = FlatPoly::zero();
        if d == 0 {
            // the empty flag and empty composition contribute the constant 1
            out.add_term(BTreeMap::new(), Rat::one());
            return Ok(out);
        }
        // flags of strictly increasing proper flats
        let mut flags: Vec<Vec<LabelSet>> = vec![Vec::new()];
        let mut all_flags: Vec<Vec<LabelSet>> = Vec::new();
        while let Some(flag) = flags.pop() {
            if !flag.is_empty() {
                all_flags.push(flag.clone());
            }
            for f in &proper_flats {
                if flag.last().is_none_or(|last: &LabelSet| last.is_subset(f) && last != f) {
                    let mut next = flag.clone();
                    next.push(f.clone());
                    flags.push(next);
                }
            }
        }
        for flag in &all_flags {
            let k = flag.len();
            if k > d {
                continue;
            }
            for comp in compositions(d, k) {
                let mut coeff = Rat::from(multinomial(&comp) as i64);
                if (d - k) % 2 == 1 {
                    coeff = -coeff;
                }
                let mut partial = 0usize;
                let mut ok = true;
                for (i, di) in comp.iter().enumerate() {
                    partial += di;
                    let fi = &flag[i];
                    let rk_fi = self.rank_of(fi);
                    if partial < rk_fi {
                        ok = false;
                        break;
                    }
                    let exp = partial - rk_fi;
                    let binom = binomial(di - 1, exp);
                    if binom == 0 {
                        ok = false;
                        break;
                    }
                    let upper = if i + 1 < k { &flag[i + 1] } else { &self.ground };
                    let minor = self.minor(fi, upper)?;
                    let mu = if minor.has_loop() {
                        Rat::zero()
                    } else {
                        minor.mu_i(exp)?
                    };
                    if mu.is_zero() {
                        ok = false;
                        break;
                    }
                    coeff *= Rat::from(binom as i64) * mu;
                }
                if !ok || coeff.is_zero() {
                    continue;
                }
                let mono: BTreeMap<LabelSet, usize> = flag.iter().map(|f| (f.clone(), 1usize)).collect();
                out.add_term(mono, coeff);
            }
        }
        Ok(out)
    }
}

/// Every matroid on the ground set, by filtering same-size basis collections
/// through the exchange axiom. Exponential; meant for small ground sets.
pub fn all_matroids(ground: &LabelSet) -> Vec<Matroid> {
    let mut out = Vec::new();
    for r in 0..=ground.len() {
        let cands: Vec<LabelSet> = ground
            .iter()
            .cloned()
            .combinations(r)
            .map(|c| c.into_iter().collect())
            .collect();
        let k = cands.len();
        assert!(k < 32, "too many candidate bases");
        for mask in 1u32..(1 << k) {
            let bases: Vec<LabelSet> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| cands[i].clone())
                .collect();
            if let Ok(m) = Matroid::new(ground.clone(), bases) {
                out.push(m);
            }
        }
    }
    out
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "matroid({}; rank {}, {} bases)",
            set_key(&self.ground),
            self.rank(),
            self.bases.len()
        )
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<String> = self.bases.iter().map(set_key).collect();
        write!(f, "matroid({}; {{{}}})", set_key(&self.ground), bs.join(" "))
    }
}

/// Which beta invariant a computation should use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BetaConvention {
    /// Coefficient of `x` in the Tutte polynomial (the default).
    Crapo,
    /// Unsigned constant coefficient of the reduced characteristic
    /// polynomial.
    Paper,
}

impl BetaConvention {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "crapo" => Ok(BetaConvention::Crapo),
            "paper" => Ok(BetaConvention::Paper),
            other => Err(Error::parse(format!("unknown beta convention `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BetaConvention::Crapo => "crapo",
            BetaConvention::Paper => "paper",
        }
    }
}

/// Histogram of rank-jump 0/1 sequences over all linear orders.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GInvariant {
    n: usize,
    counts: BTreeMap<Vec<u8>, u64>,
}

impl GInvariant {
    pub fn counts(&self) -> &BTreeMap<Vec<u8>, u64> {
        &self.counts
    }

    pub fn sequence_length(&self) -> usize {
        self.n
    }

    /// Total multiplicity; always `n!`.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Formal difference as a signed map, for valuation checks.
    pub fn signed(&self) -> BTreeMap<Vec<u8>, Rat> {
        self.counts
            .iter()
            .map(|(k, v)| (k.clone(), Rat::from(*v as i64)))
            .collect()
    }

    pub fn key_strings(&self) -> BTreeMap<String, u64> {
        self.counts
            .iter()
            .map(|(k, v)| (k.iter().map(u8::to_string).collect::<String>(), *v))
            .collect()
    }
}

impl fmt::Debug for GInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.key_strings()).finish()
    }
}

/// Compositions of `d` into exactly `k` positive parts.
fn compositions(d: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    fn rec(remaining: usize, slots: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            if remaining >= 1 {
                acc.push(remaining);
                out.push(acc.clone());
                acc.pop();
            }
            return;
        }
        for first in 1..=remaining.saturating_sub(slots - 1) {
            acc.push(first);
            rec(remaining - first, slots - 1, acc, out);
            acc.pop();
        }
    }
    rec(d, k, &mut Vec::new(), &mut out);
    out
}

/// A flag matroid: constituents on a common ground set with strictly
/// increasing ranks.
#[derive(Clone, PartialEq, Eq)]
pub struct FlagMatroid {
    constituents: Vec<Matroid>,
}

impl FlagMatroid {
    pub fn new(constituents: Vec<Matroid>) -> Result<Self> {
        let first = constituents
            .first()
            .ok_or_else(|| Error::invalid("flag matroid needs at least one constituent"))?;
        let ground = first.ground().clone();
        for m in &constituents {
            if *m.ground() != ground {
                return Err(Error::ground("constituents on different ground sets"));
            }
        }
        for w in constituents.windows(2) {
            if w[0].rank() >= w[1].rank() {
                return Err(Error::invalid("constituent ranks must strictly increase"));
            }
        }
        Ok(FlagMatroid { constituents })
    }

    pub fn constituents(&self) -> &[Matroid] {
        &self.constituents
    }

    pub fn ground(&self) -> &LabelSet {
        self.constituents[0].ground()
    }

    /// The flag matroid polytope: the Minkowski sum of constituent polytopes,
    /// with `z = Σ_i rank_i`.
    pub fn to_gp(&self) -> SubmodularGp {
        let mut it = self.constituents.iter().map(Matroid::to_gp);
        let first = it.next().unwrap();
        it.fold(first, |acc, next| {
            let z = acc
                .z_map()
                .iter()
                .map(|(a, v)| (a.clone(), v.clone() + next.z(a).clone()))
                .collect();
            SubmodularGp::new(acc.ground().clone(), z).expect("sum of submodular is submodular")
        })
    }

    /// Exhaustive Gale check: every linear order admits a unique minimal
    /// flag of bases under the componentwise Gale order.
    pub fn gale_check(&self) -> bool {
        // flags of bases: one basis per constituent, nested
        let mut flags: Vec<Vec<&LabelSet>> = vec![Vec::new()];
        for m in &self.constituents {
            let mut next = Vec::new();
            for flag in &flags {
                for b in m.bases() {
                    if flag.last().is_none_or(|prev| prev.is_subset(b)) {
                        let mut f = flag.clone();
                        f.push(b);
                        next.push(f);
                    }
                }
            }
            flags = next;
        }
        if flags.is_empty() {
            return false;
        }
        let elems: Vec<Label> = self.ground().iter().cloned().collect();
        for perm in elems.iter().cloned().permutations(elems.len()) {
            let pos: BTreeMap<&Label, usize> =
                perm.iter().enumerate().map(|(i, l)| (l, i)).collect();
            let gale_leq = |a: &LabelSet, b: &LabelSet| -> bool {
                let mut av: Vec<usize> = a.iter().map(|x| pos[x]).collect();
                let mut bv: Vec<usize> = b.iter().map(|x| pos[x]).collect();
                av.sort();
                bv.sort();
                av.iter().zip(&bv).all(|(x, y)| x <= y)
            };
            let flag_leq = |f: &Vec<&LabelSet>, g: &Vec<&LabelSet>| -> bool {
                f.iter().zip(g).all(|(a, b)| gale_leq(a, b))
            };
            // a unique minimum must lie below every flag
            let minima = flags
                .iter()
                .filter(|f| flags.iter().all(|g| flag_leq(f, g)))
                .count();
            if minima != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::labels;
    use crate::osp::parse_osp_compact;

    fn u(r: usize, n: usize) -> Matroid {
        Matroid::uniform(r, n)
    }

    /// Independent corank-nullity oracle over explicit subsets.
    fn tutte_oracle(m: &Matroid) -> BiPoly {
        let mut out = BiPoly::zero();
        for a in all_subsets(m.ground()) {
            let ra = m.rank_of(&a);
            out = out + BiPoly::xm1_ym1(m.rank() - ra, a.len() - ra);
        }
        out
    }

    #[test]
    fn construction_validates_exchange() {
        assert!(Matroid::new(labels([1, 2, 3]), vec![labels([1]), labels([2])]).is_ok());
        // {12}, {34} fails exchange on U_4
        let bad = Matroid::new(labels([1, 2, 3, 4]), vec![labels([1, 2]), labels([3, 4])]);
        assert!(bad.is_err());
        // different sizes
        assert!(Matroid::new(labels([1, 2]), vec![labels([1]), labels([1, 2])]).is_err());
    }

    #[test]
    fn minors_of_uniform() {
        let m = u(2, 4);
        let s = labels([1, 2]);
        let r = m.restrict(&s);
        assert_eq!(r, Matroid::uniform_on(2, labels([1, 2])));
        let c = m.contract(&s);
        assert_eq!(c, Matroid::uniform_on(0, labels([3, 4])));
        // M[B, B] has empty ground
        let mm = m.minor(&s, &s).unwrap();
        assert!(mm.ground().is_empty());
        assert_eq!(mm.bases().len(), 1);
        // polytope coherence with restriction
        let (left, _) = m.to_gp().restrict_contract(&s).unwrap();
        assert_eq!(m.restrict(&s).to_gp(), left);
    }

    #[test]
    fn iterated_minors_associate() {
        // every OSP of a 4-element ground set gives the same minors
        // regardless of association order
        let m = u(2, 4);
        for osp in OrderedSetPartition::enumerate(m.ground()) {
            // left-to-right
            let mut left = Vec::new();
            let mut rest = m.clone();
            let blocks = osp.blocks().to_vec();
            for (i, b) in blocks.iter().enumerate() {
                if i + 1 == blocks.len() {
                    left.push(rest.clone());
                } else {
                    left.push(rest.restrict(b));
                    rest = rest.contract(b);
                }
            }
            // via the prefix-minor formula M[F_{i-1}, F_i]
            let mut prefix = LabelSet::new();
            let mut via_minor = Vec::new();
            for b in &blocks {
                let mut next = prefix.clone();
                next.extend(b.iter().cloned());
                via_minor.push(m.minor(&prefix, &next).unwrap());
                prefix = next;
            }
            assert_eq!(left, via_minor);
        }
    }

    #[test]
    fn matroid_polytopes() {
        let seg = u(1, 2).to_gp();
        assert_eq!(seg.vertices().len(), 2);
        let h = u(2, 4).to_gp();
        assert_eq!(h.vertices().len(), 6);
        // direct sum maps to product
        let a = u(1, 2);
        let b = Matroid::uniform_on(1, labels([3, 4]));
        let sum = a.direct_sum(&b).unwrap();
        assert_eq!(sum.to_gp(), a.to_gp().product(&b.to_gp()).unwrap());
    }

    #[test]
    fn tutte_examples() {
        let t = u(1, 2).tutte();
        let mut expect = BiPoly::zero();
        expect.add_term(1, 0, Rat::one());
        expect.add_term(0, 1, Rat::one());
        assert_eq!(t, expect);
        assert_eq!(t, tutte_oracle(&u(1, 2)));

        // U_{2,4}: x^2 + 2x + 2y + y^2
        let t = u(2, 4).tutte();
        let mut expect = BiPoly::zero();
        expect.add_term(2, 0, Rat::one());
        expect.add_term(1, 0, Rat::from(2));
        expect.add_term(0, 1, Rat::from(2));
        expect.add_term(0, 2, Rat::one());
        assert_eq!(t, expect);

        // free matroid: x^n
        assert_eq!(u(3, 3).tutte(), BiPoly::monomial(3, 0, Rat::one()));
    }

    #[test]
    fn tutte_multiplicative_and_deletion_contraction() {
        let a = u(1, 2);
        let b = Matroid::uniform_on(2, labels([3, 4, 5]));
        let sum = a.direct_sum(&b).unwrap();
        assert_eq!(sum.tutte(), a.tutte() * b.tutte());

        // T_M = T_{M\e} + T_{M/e} for e neither loop nor coloop, over the
        // whole census of matroids on at most 4 elements
        for m in small_matroids(4) {
            for e in m.ground().clone() {
                if m.is_loop(&e) || m.is_coloop(&e) {
                    continue;
                }
                let del = m.delete(&e).tutte();
                let con = m.contract(&labels([e.clone()])).tutte();
                assert_eq!(m.tutte(), del + con);
            }
        }
    }

    #[test]
    fn characteristic_polynomial() {
        let chi = u(2, 3).char_poly();
        let expect: UniPoly = [(2, Rat::one()), (1, Rat::from(-3)), (0, Rat::from(2))]
            .into_iter()
            .collect();
        assert_eq!(chi, expect);
        let red = u(2, 3).reduced_char().unwrap();
        let expect: UniPoly = [(1, Rat::one()), (0, Rat::from(-2))].into_iter().collect();
        assert_eq!(red, expect);

        // loop: U_{1,2} ⊕ U_{0,1} has a loop and χ = 0
        let with_loop = u(1, 2)
            .direct_sum(&Matroid::uniform_on(0, labels([3])))
            .unwrap();
        assert!(with_loop.char_poly().is_zero());

        // χ_M(t) = (-1)^r T_M(1-t, 0) on all matroids with n <= 4
        for m in small_matroids(4) {
            let r = m.rank();
            let one_minus_t = UniPoly::one() - UniPoly::t();
            let spec = m.tutte().substitute(&one_minus_t, &UniPoly::zero());
            let signed = if r % 2 == 0 { spec } else { UniPoly::zero() - spec };
            assert_eq!(m.char_poly(), signed, "failed for {m:?}");
        }
    }

    #[test]
    fn beta_conventions_differ_on_u23() {
        assert_eq!(u(1, 2).beta(BetaConvention::Crapo).unwrap(), Rat::one());
        assert_eq!(u(1, 2).beta(BetaConvention::Paper).unwrap(), Rat::one());
        assert_eq!(u(2, 3).beta(BetaConvention::Crapo).unwrap(), Rat::one());
        assert_eq!(u(2, 3).beta(BetaConvention::Paper).unwrap(), Rat::from(2));
        // disconnected: Crapo beta vanishes
        let disc = u(1, 1)
            .direct_sum(&Matroid::uniform_on(1, labels([2])))
            .unwrap();
        assert_eq!(disc.beta(BetaConvention::Crapo).unwrap(), Rat::zero());
    }

    #[test]
    fn csm_weights() {
        let m = u(2, 3);
        assert_eq!(m.csm_weight(&parse_osp_compact("1|23").unwrap()).unwrap(), Rat::one());
        // non-flat prefix vanishes: {1,2} is not a flat of U_{2,3}... it is
        // spanning, so contract has rank 0 on {3}: loop, beta 0
        assert_eq!(m.csm_weight(&parse_osp_compact("12|3").unwrap()).unwrap(), Rat::zero());
    }

    #[test]
    fn g_invariant_examples() {
        let g = u(1, 2).g_invariant();
        assert_eq!(g.total(), 2);
        assert_eq!(g.counts().get(&vec![1, 0]).copied(), Some(2));

        let g = u(2, 3).g_invariant();
        assert_eq!(g.counts().get(&vec![1, 1, 0]).copied(), Some(6));
        assert_eq!(g.counts().len(), 1);

        let g = u(3, 3).g_invariant();
        assert_eq!(g.counts().get(&vec![1, 1, 1]).copied(), Some(6));
        // multiplicities sum to n!, sequences carry rank-many ones
        for seq in g.counts().keys() {
            assert_eq!(seq.iter().filter(|&&x| x == 1).count(), 3);
        }
    }

    #[test]
    fn bjr_character_counts_bases() {
        assert!(u(1, 1).bjr_character().is_one());
        assert!(u(1, 2).bjr_character().is_zero());
    }

    #[test]
    fn volume_polynomial_small() {
        // rank 1: constant 1
        let vp = u(1, 3).volume_polynomial().unwrap();
        let mut expect = FlatPoly::zero();
        expect.add_term(BTreeMap::new(), Rat::one());
        assert_eq!(vp, expect);

        // U_{2,3}: d = 1, single-flat flags {1},{2},{3} with d_1 = 1
        let vp = u(2, 3).volume_polynomial().unwrap();
        let mut expect = FlatPoly::zero();
        for i in 1..=3i64 {
            let mono: BTreeMap<LabelSet, usize> = [(labels([i]), 1usize)].into_iter().collect();
            // (-1)^{1-1} (1;1) C(0,0) μ^0(M[{i}, I]) with μ^0(U_{1,2}) = 1
            expect.add_term(mono, Rat::one());
        }
        assert_eq!(vp, expect);

        assert!(u(1, 2)
            .direct_sum(&Matroid::uniform_on(0, labels([3])))
            .unwrap()
            .volume_polynomial()
            .is_err());
    }

    #[test]
    fn flag_matroid_polytope() {
        let fm = FlagMatroid::new(vec![u(1, 2), u(2, 2)]).unwrap();
        let gp = fm.to_gp();
        let verts = gp.vertices();
        assert_eq!(verts.len(), 2);
        let expect: Vec<crate::gp::Point> = vec![
            [(Label::from(1), Rat::from(2)), (Label::from(2), Rat::from(1))].into_iter().collect(),
            [(Label::from(1), Rat::from(1)), (Label::from(2), Rat::from(2))].into_iter().collect(),
        ];
        for v in expect {
            assert!(verts.contains(&v));
        }
        assert!(fm.gale_check());

        // single constituent reduces to the matroid polytope
        let fm = FlagMatroid::new(vec![u(2, 4)]).unwrap();
        assert_eq!(fm.to_gp(), u(2, 4).to_gp());

        // non-increasing ranks rejected
        assert!(FlagMatroid::new(vec![u(2, 2), u(1, 2)]).is_err());
    }

    /// All matroids on ground sets {1..n'} for n' <= n.
    fn small_matroids(n: usize) -> Vec<Matroid> {
        (1..=n)
            .flat_map(|size| {
                let ground: LabelSet = (1..=size as u64).map(Label::from).collect();
                all_matroids(&ground)
            })
            .collect()
    }

    #[test]
    fn small_matroid_census_is_reasonable() {
        // 1-element ground: U_{0,1} and U_{1,1}
        let ms = small_matroids(1);
        assert_eq!(ms.len(), 2);
        // census over n = 3 contains the uniform ones
        let ms = small_matroids(3);
        assert!(ms.contains(&u(1, 3)));
        assert!(ms.contains(&u(2, 3)));
    }
}
