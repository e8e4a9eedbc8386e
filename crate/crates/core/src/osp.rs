//! Ordered set partitions, their weighted variant, and the quasishuffle
//! product / prefix coproduct that make weighted ordered set partitions a
//! Hopf monoid.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal::FormalSum;
use crate::label::{Label, LabelSet};
use crate::rational::Rat;

/// An ordered sequence of nonempty, pairwise disjoint blocks covering the
/// ground set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderedSetPartition {
    blocks: Vec<LabelSet>,
}

impl OrderedSetPartition {
    pub fn new(blocks: Vec<LabelSet>) -> Result<Self> {
        let mut seen = LabelSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::invalid("ordered set partition has an empty block"));
            }
            for x in b {
                if !seen.insert(x.clone()) {
                    return Err(Error::invalid(format!(
                        "label `{x}` appears in two blocks"
                    )));
                }
            }
        }
        Ok(OrderedSetPartition { blocks })
    }

    /// The empty partition of the empty ground set.
    pub fn empty() -> Self {
        OrderedSetPartition { blocks: Vec::new() }
    }

    /// Single-block partition of `ground`.
    pub fn single_block(ground: LabelSet) -> Self {
        if ground.is_empty() {
            Self::empty()
        } else {
            OrderedSetPartition { blocks: vec![ground] }
        }
    }

    pub fn blocks(&self) -> &[LabelSet] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn ground(&self) -> LabelSet {
        self.blocks.iter().flatten().cloned().collect()
    }

    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(LabelSet::len).sum()
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: &Label) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(x))
    }

    /// Restriction to `subset`: intersect blocks in order, drop empties.
    pub fn restrict(&self, subset: &LabelSet) -> Result<Self> {
        if !subset.is_subset(&self.ground()) {
            return Err(Error::ground(
                "restriction set is not contained in the ground set",
            ));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.intersection(subset).cloned().collect::<LabelSet>())
            .filter(|b| !b.is_empty())
            .collect();
        Ok(OrderedSetPartition { blocks })
    }

    /// All ordered set partitions of `ground`.
    pub fn enumerate(ground: &LabelSet) -> Vec<Self> {
        let elems: Vec<Label> = ground.iter().cloned().collect();
        let mut out = Vec::new();
        let mut blocks: Vec<LabelSet> = Vec::new();
        fn rec(rest: &[Label], blocks: &mut Vec<LabelSet>, out: &mut Vec<OrderedSetPartition>) {
            if rest.is_empty() {
                out.push(OrderedSetPartition { blocks: blocks.clone() });
                return;
            }
            // first block: any nonempty subset of the remaining labels
            let n = rest.len();
            for mask in 1u32..(1 << n) {
                let block: LabelSet = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| rest[i].clone())
                    .collect();
                let remaining: Vec<Label> = (0..n)
                    .filter(|i| mask >> i & 1 == 0)
                    .map(|i| rest[i].clone())
                    .collect();
                blocks.push(block);
                rec(&remaining, blocks, out);
                blocks.pop();
            }
        }
        if elems.is_empty() {
            return vec![Self::empty()];
        }
        rec(&elems, &mut blocks, &mut out);
        out
    }

    /// All linear orders of the ground set refining this partition.
    pub fn refining_orders(&self) -> Vec<Vec<Label>> {
        use itertools::Itertools;
        let mut orders: Vec<Vec<Label>> = vec![Vec::new()];
        for block in &self.blocks {
            let elems: Vec<Label> = block.iter().cloned().collect();
            let perms: Vec<Vec<Label>> = elems
                .iter()
                .cloned()
                .permutations(elems.len())
                .collect();
            let mut next = Vec::with_capacity(orders.len() * perms.len());
            for prefix in &orders {
                for perm in &perms {
                    let mut o = prefix.clone();
                    o.extend(perm.iter().cloned());
                    next.push(o);
                }
            }
            orders = next;
        }
        orders
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "()");
        }
        let compact = self
            .blocks
            .iter()
            .flatten()
            .all(|l| l.as_str().len() == 1);
        let sep = if compact { "" } else { "," };
        let rendered: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(Label::to_string).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "{}", rendered.join("|"))
    }
}

impl fmt::Debug for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses the compact `14|2|35` form (single-character labels only).
pub fn parse_osp_compact(s: &str) -> Result<OrderedSetPartition> {
    let blocks: Vec<LabelSet> = s
        .split('|')
        .map(|b| b.chars().map(|c| Label::new(c.to_string())).collect())
        .collect();
    OrderedSetPartition::new(blocks)
}

/// All quasishuffles of `f` and `g`: the ordered set partitions `h` of the
/// disjoint union whose restrictions to the two ground sets are `f` and `g`.
/// Each block of the result is a block of `f`, a block of `g`, or a union of
/// one of each.
pub fn quasishuffles(
    f: &OrderedSetPartition,
    g: &OrderedSetPartition,
) -> Result<Vec<OrderedSetPartition>> {
    let gf = f.ground();
    let gg = g.ground();
    if !gf.is_disjoint(&gg) {
        return Err(Error::ground("quasishuffle requires disjoint ground sets"));
    }
    // walk both block sequences: at each step take a block from f, a block
    // from g, or merge the next block of each
    let mut out = Vec::new();
    fn rec(
        fb: &[LabelSet],
        gb: &[LabelSet],
        acc: &mut Vec<LabelSet>,
        out: &mut Vec<OrderedSetPartition>,
    ) {
        if fb.is_empty() && gb.is_empty() {
            out.push(OrderedSetPartition { blocks: acc.clone() });
            return;
        }
        if !fb.is_empty() {
            acc.push(fb[0].clone());
            rec(&fb[1..], gb, acc, out);
            acc.pop();
        }
        if !gb.is_empty() {
            acc.push(gb[0].clone());
            rec(fb, &gb[1..], acc, out);
            acc.pop();
        }
        if !fb.is_empty() && !gb.is_empty() {
            acc.push(fb[0].union(&gb[0]).cloned().collect());
            rec(&fb[1..], &gb[1..], acc, out);
            acc.pop();
        }
    }
    rec(f.blocks(), g.blocks(), &mut Vec::new(), &mut out);
    Ok(out)
}

/// An ordered set partition with one rational weight per block; the basis
/// element of the indicator quotient, and the combinatorial shadow of a
/// translated OSP cone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightedOsp {
    partition: OrderedSetPartition,
    weights: Vec<Rat>,
}

impl WeightedOsp {
    pub fn new(partition: OrderedSetPartition, weights: Vec<Rat>) -> Result<Self> {
        if partition.num_blocks() != weights.len() {
            return Err(Error::invalid(format!(
                "{} blocks but {} weights",
                partition.num_blocks(),
                weights.len()
            )));
        }
        Ok(WeightedOsp { partition, weights })
    }

    pub fn empty() -> Self {
        WeightedOsp {
            partition: OrderedSetPartition::empty(),
            weights: Vec::new(),
        }
    }

    pub fn partition(&self) -> &OrderedSetPartition {
        &self.partition
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn num_blocks(&self) -> usize {
        self.weights.len()
    }

    pub fn ground(&self) -> LabelSet {
        self.partition.ground()
    }

    /// Weight of the block containing `x`.
    pub fn weight_of(&self, x: &Label) -> Option<&Rat> {
        self.partition.block_of(x).map(|i| &self.weights[i])
    }

    /// Weight map keyed by block.
    pub fn weight_map(&self) -> BTreeMap<LabelSet, Rat> {
        self.partition
            .blocks()
            .iter()
            .cloned()
            .zip(self.weights.iter().cloned())
            .collect()
    }
}

impl fmt::Display for WeightedOsp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(Rat::to_string).collect();
        write!(f, "{};({})", self.partition, ws.join(","))
    }
}

impl fmt::Debug for WeightedOsp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Product in the Hopf monoid of weighted ordered set partitions: the sum of
/// all weighted quasishuffles, where merged blocks add their weights.
pub fn wosp_product(a: &WeightedOsp, b: &WeightedOsp) -> Result<FormalSum<WeightedOsp>> {
    let wa = a.weight_map();
    let wb = b.weight_map();
    let shuffles = quasishuffles(a.partition(), b.partition())?;
    let ga = a.ground();
    let mut out = FormalSum::zero();
    for h in shuffles {
        let weights: Vec<Rat> = h
            .blocks()
            .iter()
            .map(|block| {
                let pa: LabelSet = block.intersection(&ga).cloned().collect();
                if pa.is_empty() {
                    wb[block].clone()
                } else if pa == *block {
                    wa[block].clone()
                } else {
                    let pb: LabelSet = block.difference(&pa).cloned().collect();
                    wa[&pa].clone() + wb[&pb].clone()
                }
            })
            .collect();
        out.add_term(WeightedOsp { partition: h, weights }, Rat::one());
    }
    Ok(out)
}

/// Coproduct: splits off the leading blocks when `s` is a union of them,
/// and vanishes otherwise.
pub fn wosp_coproduct(x: &WeightedOsp, s: &LabelSet) -> Result<Option<(WeightedOsp, WeightedOsp)>> {
    let ground = x.ground();
    if !s.is_subset(&ground) {
        return Err(Error::ground("coproduct set is not contained in the ground set"));
    }
    let mut covered = LabelSet::new();
    let mut split_at = None;
    if s.is_empty() {
        split_at = Some(0);
    }
    for (i, block) in x.partition().blocks().iter().enumerate() {
        if covered.len() == s.len() {
            break;
        }
        if !block.is_subset(s) {
            return Ok(None);
        }
        covered.extend(block.iter().cloned());
        if covered.len() == s.len() {
            split_at = Some(i + 1);
        }
    }
    let Some(j) = split_at else { return Ok(None) };
    if covered != *s && !s.is_empty() {
        return Ok(None);
    }
    let left = WeightedOsp {
        partition: OrderedSetPartition {
            blocks: x.partition().blocks()[..j].to_vec(),
        },
        weights: x.weights()[..j].to_vec(),
    };
    let right = WeightedOsp {
        partition: OrderedSetPartition {
            blocks: x.partition().blocks()[j..].to_vec(),
        },
        weights: x.weights()[j..].to_vec(),
    };
    Ok(Some((left, right)))
}

/// Quasishuffle-bilinear extension of the product to formal sums.
pub fn wosp_product_sums(
    a: &FormalSum<WeightedOsp>,
    b: &FormalSum<WeightedOsp>,
) -> Result<FormalSum<WeightedOsp>> {
    let mut out = FormalSum::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            let prod = wosp_product(x, y)?;
            for (t, c) in prod.iter() {
                out.add_term(t.clone(), c * &(cx * cy));
            }
        }
    }
    Ok(out)
}

/// Coproduct extended linearly to formal sums; the result is a sum of
/// tensor pairs.
pub fn wosp_coproduct_sum(
    x: &FormalSum<WeightedOsp>,
    s: &LabelSet,
) -> Result<FormalSum<(WeightedOsp, WeightedOsp)>> {
    let mut out = FormalSum::zero();
    for (t, c) in x.iter() {
        if let Some(pair) = wosp_coproduct(t, s)? {
            out.add_term(pair, c.clone());
        }
    }
    Ok(out)
}
