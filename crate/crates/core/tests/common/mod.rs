#![allow(dead_code)]

use std::sync::Arc;

use catend::instances::generators::{
    boolean_algebra, divisor_lattice, down_sets, heyting_chain, lukasiewicz_chain, powerset_quantale, product,
    CommutativeMonoid,
};
use catend::instances::{El, Quantale, RawQuantale};
use catend::{Category, Diagram, FinCategory, FinCategoryBuilder, FunctorData};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> (Vec<String>, Vec<(String, String)>) {
    let pts: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut leq = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                leq.push((pts[i].clone(), pts[j].clone()));
            }
        }
    }
    (pts, leq)
}

/// Heyting algebras, Łukasiewicz chains Ł2 to Ł8, powerset quantales and
/// products, all with at most 16 elements.
pub fn quantale_zoo() -> Vec<(String, Quantale)> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push((format!("heyting-chain-{n}"), heyting_chain(n).unwrap()));
    }
    for n in 1..=7 {
        out.push((format!("lukasiewicz-{}", n + 1), lukasiewicz_chain(n).unwrap()));
    }
    for k in 1..=4 {
        out.push((format!("boolean-{k}"), boolean_algebra(k).unwrap()));
    }
    for n in [6, 8, 12, 18, 30, 36, 60, 72, 120] {
        out.push((format!("divisors-{n}"), divisor_lattice(n).unwrap()));
    }
    for n in 1..=4 {
        out.push((format!("powerset-cyclic-{n}"), powerset_quantale(&CommutativeMonoid::cyclic(n).unwrap()).unwrap()));
    }
    for n in 2..=4 {
        let m = CommutativeMonoid::max_semilattice(n).unwrap();
        out.push((format!("powerset-max-{n}"), powerset_quantale(&m).unwrap()));
        let m = CommutativeMonoid::truncated_sum(n).unwrap();
        out.push((format!("powerset-truncated-{n}"), powerset_quantale(&m).unwrap()));
    }
    let mut r = rng(2024);
    let mut made = 0;
    while made < 10 {
        let (pts, leq) = random_poset(&mut r, 4);
        let q = down_sets(&pts, &leq).unwrap();
        if q.len() <= 16 {
            out.push((format!("down-sets-{made}"), q));
            made += 1;
        }
    }
    let l3 = lukasiewicz_chain(2).unwrap();
    let h2 = heyting_chain(2).unwrap();
    out.push(("heyting-2-x-lukasiewicz-3".into(), product(&h2, &l3).unwrap()));
    out.push(("lukasiewicz-3-squared".into(), product(&l3, &l3).unwrap()));
    out.push(("heyting-3-x-heyting-4".into(), product(&heyting_chain(3).unwrap(), &heyting_chain(4).unwrap()).unwrap()));
    assert!(out.iter().all(|(_, q)| q.len() <= 16));
    out
}

/// A shape with at most `max` objects: discrete, a random preorder (cycles
/// allowed), a parallel pair, or a span.
pub fn random_shape(rng: &mut ChaCha8Rng, max: usize) -> Arc<FinCategory> {
    match rng.gen_range(0..5) {
        0 => {
            let n = rng.gen_range(0..=max);
            let mut b = FinCategoryBuilder::new();
            for i in 0..n {
                b.object(&format!("i{i}"));
            }
            Arc::new(b.build().unwrap())
        }
        1 | 2 => {
            let n = rng.gen_range(1..=max);
            let objs: Vec<String> = (0..n).map(|i| format!("i{i}")).collect();
            let mut leq = Vec::new();
            for a in &objs {
                for b in &objs {
                    if a != b && rng.gen_bool(0.3) {
                        leq.push((a.clone(), b.clone()));
                    }
                }
            }
            Arc::new(FinCategory::from_preorder(&objs, &leq).unwrap())
        }
        3 => {
            let mut b = FinCategoryBuilder::new();
            b.object("i").object("j").arrow("f", "i", "j").arrow("g", "i", "j");
            Arc::new(b.build().unwrap())
        }
        _ => {
            let mut b = FinCategoryBuilder::new();
            b.object("i").object("k").object("l").arrow("f", "i", "k").arrow("g", "i", "l");
            Arc::new(b.build().unwrap())
        }
    }
}

/// A diagram in a thin quantale: random object images, pushed up along shape
/// arrows until every arrow has an image.
pub fn random_diagram(q: &Quantale, shape: Arc<FinCategory>, rng: &mut ChaCha8Rng) -> Diagram<Quantale> {
    let els = q.elements();
    let mut objs: Vec<El> = (0..shape.num_objects()).map(|_| *els.choose(rng).unwrap()).collect();
    loop {
        let mut changed = false;
        for a in shape.arrow_ixs() {
            let (s, t) = (shape.src(&a).0, shape.tgt(&a).0);
            let j = q.join(objs[s], objs[t]);
            if j != objs[t] {
                objs[t] = j;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    FunctorData::from_object_map(q, shape, objs, |a, b| q.le(*a, *b)).unwrap()
}

/// The reflexive-transitive closure of a raw quantale's order, by index.
pub fn order_oracle(raw: &RawQuantale) -> Vec<Vec<bool>> {
    let n = raw.elements.len();
    let ix = |s: &String| raw.elements.iter().position(|e| e == s).unwrap();
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for [a, b] in &raw.leq {
        le[ix(a)][ix(b)] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    le
}

/// The least upper bound of `xs` read off the raw order table.
pub fn join_oracle(raw: &RawQuantale, xs: &[usize]) -> usize {
    let le = order_oracle(raw);
    let n = le.len();
    let ubs: Vec<usize> = (0..n).filter(|&u| xs.iter().all(|&x| le[x][u])).collect();
    *ubs.iter().find(|&&u| ubs.iter().all(|&v| le[u][v])).expect("finite lattice has joins")
}

/// `x ⇒ z` as the greatest `y` with `x ⊗ y ≤ z`, from the raw tensor table.
pub fn residual_oracle(raw: &RawQuantale, x: usize, z: usize) -> usize {
    let le = order_oracle(raw);
    let ix = |s: &String| raw.elements.iter().position(|e| e == s).unwrap();
    let n = le.len();
    let ok: Vec<usize> = (0..n).filter(|&y| le[ix(&raw.tensor[x][y])][z]).collect();
    *ok.iter().find(|&&y| ok.iter().all(|&v| le[v][y])).expect("residual exists")
}

/// Index of a named element in a raw quantale.
pub fn raw_ix(raw: &RawQuantale, name: &str) -> usize {
    raw.elements.iter().position(|e| e == name).unwrap()
}

/// Every monotone self-map of a small lattice, as tables indexed by element.
pub fn monotone_maps(q: &Quantale) -> Vec<Vec<El>> {
    let els = q.elements();
    let mut out = Vec::new();
    let mut cur: Vec<El> = Vec::with_capacity(els.len());
    fn go(q: &Quantale, els: &[El], cur: &mut Vec<El>, out: &mut Vec<Vec<El>>) {
        let k = cur.len();
        if k == els.len() {
            out.push(cur.clone());
            return;
        }
        for &v in els {
            if (0..k).all(|j| !q.leq(els[j], els[k]) || q.leq(cur[j], v))
                && (0..k).all(|j| !q.leq(els[k], els[j]) || q.leq(v, cur[j]))
            {
                cur.push(v);
                go(q, els, cur, out);
                cur.pop();
            }
        }
    }
    go(q, &els, &mut cur, &mut out);
    out
}
