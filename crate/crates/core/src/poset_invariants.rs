//! Valuations on posets and poset cones: (pre)antichain characters, order
//! polynomials, the antichain Tutte polynomial, transversal partitions, and
//! the Poincaré polynomial.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::label::{Label, LabelSet};
use crate::osp::OrderedSetPartition;
use crate::poly::{BiPoly, UniPoly};
use crate::preposet::{Poset, Preposet};
use crate::rational::Rat;

/// Antichain character: 1 on antichains, 0 otherwise.
pub fn antichain_char(p: &Poset) -> Rat {
    if p.is_antichain() {
        Rat::one()
    } else {
        Rat::zero()
    }
}

/// Preantichain character, the strong-valuation extension of the antichain
/// character to preposets: `(-1)^{|I| - |q|}` on preantichains, 0 otherwise.
pub fn preantichain_char(q: &Preposet) -> Rat {
    if !q.is_preantichain() {
        return Rat::zero();
    }
    if (q.size_ground() + q.num_classes()).is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Number of order-preserving maps into a chain of size `k`; strict or weak.
pub fn count_order_preserving_maps(p: &Poset, k: usize, strict: bool) -> u64 {
    let elems: Vec<Label> = p.ground().into_iter().collect();
    let n = elems.len();
    let mut count = 0;
    let mut values = vec![1usize; n];
    if k == 0 {
        return if n == 0 { 1 } else { 0 };
    }
    loop {
        let ok = elems.iter().enumerate().all(|(i, x)| {
            elems.iter().enumerate().all(|(j, y)| {
                if strict {
                    !p.lt(x, y) || values[i] < values[j]
                } else {
                    !p.leq(x, y) || values[i] <= values[j]
                }
            })
        });
        if ok {
            count += 1;
        }
        // odometer over [1..=k]^n
        let mut pos = 0;
        loop {
            if pos == n {
                return count;
            }
            values[pos] += 1;
            if values[pos] <= k {
                break;
            }
            values[pos] = 1;
            pos += 1;
        }
    }
}

/// Strict or weak order polynomial.
///
/// The strict polynomial is computed from map counts at `k = 0..=n` by
/// Lagrange interpolation; the weak one comes from reciprocity
/// `Ω(p)(t) = (-1)^{|I|} Ω^s(p)(-t)`.
pub fn order_polynomial(p: &Poset, strict: bool) -> UniPoly {
    let n = p.size();
    let pts: Vec<(Rat, Rat)> = (0..=n)
        .map(|k| {
            (
                Rat::from(k as i64),
                Rat::from(count_order_preserving_maps(p, k, true) as i64),
            )
        })
        .collect();
    let strict_poly = UniPoly::interpolate(&pts);
    if strict {
        strict_poly
    } else {
        // (-1)^n p(-t)
        let reflected = strict_poly.compose_linear(&-Rat::one(), &Rat::zero());
        if n.is_multiple_of(2) {
            reflected
        } else {
            UniPoly::zero() - reflected
        }
    }
}

/// Antichain Tutte polynomial
/// `T_P(x,y) = Σ_{A antichain} x^{|J(A)|} (y+1)^{|J*(A)|}`, where `J` is the
/// weak and `J*` the strict down-set of the antichain.
pub fn poset_tutte(p: &Poset) -> BiPoly {
    let ground = p.ground();
    let mut out = BiPoly::zero();
    for antichain in p.antichains() {
        let j = ground
            .iter()
            .filter(|x| antichain.iter().any(|y| p.leq(x, y)))
            .count();
        let j_strict = ground
            .iter()
            .filter(|x| antichain.iter().any(|y| p.lt(x, y)))
            .count();
        // x^j (y+1)^{j_strict}
        let mut term = BiPoly::monomial(j, 0, Rat::one());
        let yp1 = {
            let mut q = BiPoly::monomial(0, 1, Rat::one());
            q.add_term(0, 0, Rat::one());
            q
        };
        for _ in 0..j_strict {
            term = term * yp1.clone();
        }
        out = out + term;
    }
    out
}

/// Ordered transversal partitions: `S_1 | ... | S_k` with each part an
/// antichain and a lower ideal of the poset restricted to the remaining
/// suffix.
pub fn transversal_ordered(p: &Poset) -> Vec<OrderedSetPartition> {
    OrderedSetPartition::enumerate(&p.ground())
        .into_iter()
        .filter(|osp| is_transversal(p, osp))
        .collect()
}

pub fn is_transversal(p: &Poset, osp: &OrderedSetPartition) -> bool {
    let mut suffix = p.ground();
    for block in osp.blocks() {
        let restricted = p.restrict(&suffix).expect("suffix within ground");
        if !restricted.restrict(block).expect("block within suffix").is_antichain() {
            return false;
        }
        if !restricted.is_lower_ideal(block) {
            return false;
        }
        suffix = suffix.difference(block).cloned().collect();
    }
    true
}

/// Unordered transversal partitions: set partitions admitting a transversal
/// ordering.
pub fn transversal_unordered(p: &Poset) -> Vec<Vec<LabelSet>> {
    let mut seen: Vec<Vec<LabelSet>> = Vec::new();
    for osp in transversal_ordered(p) {
        let mut parts: Vec<LabelSet> = osp.blocks().to_vec();
        parts.sort();
        if !seen.contains(&parts) {
            seen.push(parts);
        }
    }
    seen.sort();
    seen
}

/// Poincaré polynomial via transversal partitions:
/// `Σ_{unordered transversal {S_i}} Π (|S_i| - 1)! · t^{|I| - #parts}`.
///
/// The exponent is the codimension of the corresponding intersection
/// subspace, matching the Whitney-number definition.
pub fn poincare(p: &Poset) -> UniPoly {
    let n = p.size();
    let mut out = UniPoly::zero();
    for parts in transversal_unordered(p) {
        let mut coeff = Rat::one();
        for s in &parts {
            coeff *= Rat::from(factorial(s.len() - 1));
        }
        out.add_term(n - parts.len(), coeff);
    }
    out
}

/// The proper-labelling refinement: sums only over ordered transversal
/// partitions that are proper for the linear order `ell`, meaning
/// `min(S_i) < min(S_{i+1})` in `ell`. Equals `poincare` when `ell` extends
/// the poset.
pub fn phi_ell(p: &Poset, ell: &[Label]) -> Result<UniPoly> {
    let ground = p.ground();
    if ell.len() != ground.len() || !ell.iter().all(|l| ground.contains(l)) {
        return Err(Error::invalid("ell must be a linear order of the ground set"));
    }
    let pos: BTreeMap<&Label, usize> = ell.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let n = p.size();
    let mut out = UniPoly::zero();
    for osp in transversal_ordered(p) {
        let mins: Vec<usize> = osp
            .blocks()
            .iter()
            .map(|b| b.iter().map(|x| pos[x]).min().unwrap())
            .collect();
        if mins.windows(2).all(|w| w[0] < w[1]) {
            let mut coeff = Rat::one();
            for b in osp.blocks() {
                coeff *= Rat::from(factorial(b.len() - 1));
            }
            out.add_term(n - osp.num_blocks(), coeff);
        }
    }
    Ok(out)
}

/// Whether `ell` is a linear extension of `p` (the poset is properly
/// labelled with respect to it).
pub fn properly_labelled(p: &Poset, ell: &[Label]) -> bool {
    let pos: BTreeMap<&Label, usize> = ell.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let ground = p.ground();
    ground
        .iter()
        .all(|x| ground.iter().all(|y| !p.lt(x, y) || pos[x] < pos[y]))
}

/// Möbius-function oracle for the Poincaré polynomial: sums `|μ(V, X)| t^codim`
/// over braid intersection subspaces `X` (set partitions) whose subspace
/// meets the open cone `{x_i < x_j for i <_p j}`.
pub fn poincare_mobius_oracle(p: &Poset) -> UniPoly {
    let elems: Vec<Label> = p.ground().into_iter().collect();
    let n = elems.len();
    let mut out = UniPoly::zero();
    for partition in set_partitions(&elems) {
        if !partition_meets_open_cone(p, &partition) {
            continue;
        }
        // |μ| of a partition in the partition lattice: Π (|B|-1)!
        let mut mu = Rat::one();
        for block in &partition {
            mu *= Rat::from(factorial(block.len() - 1));
        }
        out.add_term(n - partition.len(), mu);
    }
    out
}

/// Checks whether the subspace `{x constant on blocks}` contains a point
/// with `x_i < x_j` for all strict relations of `p`: the block digraph must
/// have no strict relation inside a block and no directed cycle.
fn partition_meets_open_cone(p: &Poset, partition: &[LabelSet]) -> bool {
    let k = partition.len();
    let block_of = |x: &Label| partition.iter().position(|b| b.contains(x)).unwrap();
    let mut edges = vec![false; k * k];
    for x in p.ground().iter() {
        for y in p.ground().iter() {
            if p.lt(x, y) {
                let (a, b) = (block_of(x), block_of(y));
                if a == b {
                    return false;
                }
                edges[a * k + b] = true;
            }
        }
    }
    // transitive closure; a cycle makes strict assignment impossible
    for m in 0..k {
        for a in 0..k {
            if edges[a * k + m] {
                for b in 0..k {
                    if edges[m * k + b] {
                        edges[a * k + b] = true;
                    }
                }
            }
        }
    }
    (0..k).all(|a| !edges[a * k + a])
}

/// All set partitions of the elements.
pub fn set_partitions(elems: &[Label]) -> Vec<Vec<LabelSet>> {
    if elems.is_empty() {
        return vec![Vec::new()];
    }
    let first = &elems[0];
    let rest = &elems[1..];
    let mut out = Vec::new();
    for sub in set_partitions(rest) {
        // first joins an existing block or starts its own
        for i in 0..sub.len() {
            let mut next = sub.clone();
            next[i].insert(first.clone());
            out.push(next);
        }
        let mut own = sub.clone();
        own.push([first.clone()].into_iter().collect());
        out.push(own);
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// All posets on the given ground set, by filtering closed relation matrices.
pub fn all_posets(ground: &LabelSet) -> Vec<Poset> {
    let elems: Vec<Label> = ground.iter().cloned().collect();
    let n = elems.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .cartesian_product(0..n)
        .filter(|(i, j)| i != j)
        .collect();
    assert!(pairs.len() < 32, "ground set too large for poset enumeration");
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1 << pairs.len()) {
        let rel: Vec<(Label, Label)> = pairs
            .iter()
            .enumerate()
            .filter(|(idx, _)| mask >> idx & 1 == 1)
            .map(|(_, (i, j))| (elems[*i].clone(), elems[*j].clone()))
            .collect();
        // require the chosen relation to already be transitively closed and
        // antisymmetric so each poset appears exactly once
        let q = Preposet::new(ground.clone(), &rel).unwrap();
        if !q.is_antisymmetric() {
            continue;
        }
        for (i, j) in &pairs {
            let has = rel.iter().any(|(a, b)| *a == elems[*i] && *b == elems[*j]);
            if q.leq(&elems[*i], &elems[*j]) != has {
                continue 'mask;
            }
        }
        out.push(Poset::from_preposet(q).unwrap());
    }
    out
}
