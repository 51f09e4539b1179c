#![allow(dead_code)]

use lingtwd::{
    ApproximationSpace, Builtin, Concept, ElementSet, Expression, Fraction, Region, Thresholds,
    TriPartition, Universe,
};
use rand::Rng;

pub struct Instance {
    pub space: ApproximationSpace,
    pub concept: Concept,
}

impl Instance {
    /// Union of the named blocks.
    pub fn blocks(&self, labels: &[&str]) -> ElementSet {
        self.space.blocks_named(labels).unwrap()
    }
}

pub fn ids(lo: usize, hi: usize) -> Vec<String> {
    (lo..=hi).map(|i| format!("u{i}")).collect()
}

fn build(
    n: usize,
    classes: &[(&str, usize, usize)],
    concept: &str,
    members: Vec<String>,
) -> Instance {
    let universe = Universe::new(ids(1, n)).unwrap();
    let blocks: Vec<(&str, Vec<String>)> = classes
        .iter()
        .map(|&(l, lo, hi)| (l, ids(lo, hi)))
        .collect();
    let space = ApproximationSpace::from_labelled_blocks(universe, &blocks).unwrap();
    let concept = Concept::from_ids(&space, concept, members).unwrap();
    Instance { space, concept }
}

/// 32 users in six communities; X_Sport as listed.
pub fn communities() -> Instance {
    let sport = [10, 11, 12, 18, 19, 20, 21, 22, 23, 24, 26]
        .iter()
        .map(|i| format!("u{i}"))
        .collect();
    build(
        32,
        &[
            ("C1", 1, 5),
            ("C2", 6, 10),
            ("C3", 11, 15),
            ("C4", 16, 20),
            ("C5", 21, 25),
            ("C6", 26, 32),
        ],
        "X_Sport",
        sport,
    )
}

/// 20 elements, classes of 5, 5, 10, X = {u6, …, u19}.
pub fn twenty() -> Instance {
    build(
        20,
        &[("C1", 1, 5), ("C2", 6, 10), ("C3", 11, 20)],
        "X",
        ids(6, 19),
    )
}

/// 30 elements, classes of 5, 5, 20, X = {u1, …, u28}.
pub fn thirty_saturated() -> Instance {
    build(
        30,
        &[("C1", 1, 5), ("C2", 6, 10), ("C3", 11, 30)],
        "X",
        ids(1, 28),
    )
}

/// 30 elements, classes of 5, 5, 20, X = {u1, u6, u11, …, u28} exactly as
/// listed; the first two classes then have ratio 1/5.
pub fn thirty_sparse_literal() -> Instance {
    let mut x = vec!["u1".to_string(), "u6".to_string()];
    x.extend(ids(11, 28));
    build(30, &[("C1", 1, 5), ("C2", 6, 10), ("C3", 11, 30)], "X", x)
}

/// 30 elements arranged so the first two classes have ratio 1/2 and the
/// third 9/10: classes of 4, 6, 20, X = {u1, u2, u5, u6, u7, u11, …, u28}.
pub fn thirty_half() -> Instance {
    let mut x: Vec<String> = ["u1", "u2", "u5", "u6", "u7"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    x.extend(ids(11, 28));
    build(30, &[("C1", 1, 4), ("C2", 5, 10), ("C3", 11, 30)], "X", x)
}

pub fn th(alpha: f64, beta: f64) -> Thresholds {
    Thresholds::new(alpha, beta).unwrap()
}

pub fn frac(n: i64, d: i64) -> Fraction {
    lingtwd::fraction::fraction(n, d)
}

/// Inclusion ratio of element `x` counted from scratch, without the
/// library's block bookkeeping.
pub fn naive_ratio(inst: &Instance, x: usize) -> Fraction {
    let block = inst
        .space
        .blocks()
        .iter()
        .find(|b| b.members.contains(&x))
        .unwrap();
    let hits = block
        .members
        .iter()
        .filter(|m| inst.concept.members.contains(m))
        .count();
    frac(hits as i64, block.members.len() as i64)
}

/// Element-by-element regions straight from the definitions.
pub fn naive_regions(
    inst: &Instance,
    degree: impl Fn(&Fraction) -> f64,
    alpha: f64,
    beta: f64,
) -> [ElementSet; 3] {
    let mut out = [ElementSet::new(), ElementSet::new(), ElementSet::new()];
    for x in 0..inst.space.universe().len() {
        let d = degree(&naive_ratio(inst, x));
        let slot = if d >= alpha {
            0
        } else if d <= beta {
            1
        } else {
            2
        };
        out[slot].insert(x);
    }
    out
}

pub fn regions_of(tp: &TriPartition) -> [ElementSet; 3] {
    [tp.pos.clone(), tp.neg.clone(), tp.bnd.clone()]
}

pub fn is_union_of_blocks(inst: &Instance, set: &ElementSet) -> bool {
    inst.space.blocks().iter().all(|b| {
        let inside = b.members.iter().filter(|m| set.contains(m)).count();
        inside == 0 || inside == b.members.len()
    })
}

pub fn monotone_builtins() -> Vec<Expression> {
    Builtin::ALL.into_iter().map(Expression::from).collect()
}

/// Random instance: `1..=max_n` elements in `1..=max_blocks` non-empty
/// blocks; each block draws its own membership rate so ratios spread over
/// `[0, 1]`, including the high end the steep expressions care about.
pub fn random_instance(rng: &mut impl Rng, max_n: usize, max_blocks: usize) -> Instance {
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(1..=max_blocks.min(n));
    let mut assign: Vec<usize> = (0..n)
        .map(|i| if i < k { i } else { rng.gen_range(0..k) })
        .collect();
    // shuffle so block membership is not tied to element order
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        assign.swap(i, j);
    }
    let id_list = ids(1, n);
    let mut blocks: Vec<Vec<String>> = vec![Vec::new(); k];
    for (i, &b) in assign.iter().enumerate() {
        blocks[b].push(id_list[i].clone());
    }
    let rates: Vec<f64> = (0..k)
        .map(|_| match rng.gen_range(0..4) {
            0 => 0.0,
            1 => 1.0,
            2 => rng.gen_range(0.8..1.0),
            _ => rng.gen::<f64>(),
        })
        .collect();
    let members: Vec<String> = assign
        .iter()
        .enumerate()
        .filter(|&(_, &b)| rng.gen_bool(rates[b]))
        .map(|(i, _)| id_list[i].clone())
        .collect();
    let space =
        ApproximationSpace::from_blocks(Universe::new(id_list.clone()).unwrap(), &blocks).unwrap();
    let concept = Concept::from_ids(&space, "X", members).unwrap();
    Instance { space, concept }
}

pub fn random_thresholds(rng: &mut impl Rng) -> Thresholds {
    loop {
        let a: f64 = rng.gen_range(0.0..=1.0);
        let b: f64 = rng.gen_range(0.0..=1.0);
        let (alpha, beta) = if a > b { (a, b) } else { (b, a) };
        if let Ok(t) = Thresholds::new(alpha, beta) {
            return t;
        }
    }
}

pub fn random_expression(rng: &mut impl Rng) -> Expression {
    match rng.gen_range(0..5) {
        0 => Builtin::NotSmall.into(),
        1 => Builtin::VeryBig.into(),
        2 => Builtin::ExtremelyBig.into(),
        3 => Expression::Identity,
        _ => Expression::step(rng.gen_range(0.0..=1.0)).unwrap(),
    }
}

pub fn region_name(r: Region) -> &'static str {
    r.name()
}
