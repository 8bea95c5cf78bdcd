//! Worked values recomputed from raw order and tensor tables.

mod common;

use std::sync::Arc;

use catend::cocompletion::{exp_lim_bifunctor, gamma, lim_exp};
use catend::ends::{end_of, verify_bifunctor, Bifunctor, Endofunctor, ExpOfEndofunctor, InternalHom};
use catend::instances::generators::{heyting_chain, lukasiewicz_chain};
use catend::instances::{El, Quantale};
use catend::{Diagram, FinCategoryBuilder, FunctorData};
use common::*;

fn discrete(q: &Quantale, xs: &[&str]) -> Diagram<Quantale> {
    let mut b = FinCategoryBuilder::new();
    for k in 0..xs.len() {
        b.object(&format!("i{k}"));
    }
    let objs = xs.iter().map(|x| q.element(x).unwrap()).collect();
    FunctorData::from_object_map(q, Arc::new(b.build().unwrap()), objs, |a, b| q.le(*a, *b)).unwrap()
}

fn el(q: &Quantale, raw_index: usize) -> El {
    q.element(&q.to_raw().elements[raw_index]).unwrap()
}

#[test]
fn residuals_match_raw_tables() {
    for (name, q) in quantale_zoo() {
        let raw = q.to_raw();
        for x in q.elements() {
            for z in q.elements() {
                let want = residual_oracle(&raw, raw_ix(&raw, q.name(x)), raw_ix(&raw, q.name(z)));
                assert_eq!(q.residual(x, z), el(&q, want), "{name}: {} ⇒ {}", q.name(x), q.name(z));
            }
        }
    }
}

#[test]
fn lim_exp_on_three_chain_pair() {
    // Lim X^d = (a ⇒ X) ∧ (0 ⇒ X), and B(X,X) = Lim X^d ⇒ X.
    let q = heyting_chain(3).unwrap();
    let raw = q.to_raw();
    let d = discrete(&q, &["1", "0"]);
    let (b, lims, t) = exp_lim_bifunctor(&q, &d).unwrap();
    assert!(t.all_pass());
    let (a, zero) = (raw_ix(&raw, "1"), raw_ix(&raw, "0"));
    for x in q.elements() {
        let xi = raw_ix(&raw, q.name(x));
        let (ra, r0) = (residual_oracle(&raw, a, xi), residual_oracle(&raw, zero, xi));
        let meet = if order_oracle(&raw)[ra][r0] { ra } else { r0 };
        assert_eq!(*lims[&x].vertex(), el(&q, meet));
        let bxx = b.on_objects(&q, &x, &x).unwrap();
        assert_eq!(bxx, el(&q, residual_oracle(&raw, meet, xi)));
    }
}

#[test]
fn gamma_expands_to_a_on_three_chain() {
    // ⋀_X (((a ⇒ X) ∧ (0 ⇒ X)) ⇒ X) over X = 0, a, 1 gives min(a, 1, 1) = a.
    let q = heyting_chain(3).unwrap();
    let g = gamma(&q, &discrete(&q, &["1", "0"])).unwrap();
    assert_eq!(q.name(*g.vertex()), "1");
    assert!(g.transcript.all_pass());
}

#[test]
fn gamma_on_lukasiewicz_three() {
    let q = lukasiewicz_chain(2).unwrap();
    let g = gamma(&q, &discrete(&q, &["1/2"])).unwrap();
    assert_eq!(q.name(*g.vertex()), "1/2");
}

#[test]
fn empty_diagram_limits_are_top() {
    let q = lukasiewicz_chain(4).unwrap();
    let lims = lim_exp(&q, &discrete(&q, &[])).unwrap();
    assert!(lims.values().all(|l| *l.vertex() == q.top()));
    let g = gamma(&q, &discrete(&q, &[])).unwrap();
    assert_eq!(*g.vertex(), q.bottom());
}

#[test]
fn interchange_on_lukasiewicz_three() {
    let q = lukasiewicz_chain(2).unwrap();
    let t = verify_bifunctor(&q, &InternalHom);
    assert!(t.all_pass());
    assert!(t.get("bifunctor.interchange").unwrap().cases > 0);
}

#[test]
fn ends_of_identity_and_constant_bottom() {
    // ⋀_X (X ⇒ X) = 1 and ⋀_X (⊥ ⇒ X) = 1.
    let h = heyting_chain(3).unwrap();
    let id = Endofunctor::thin(&h, "id", |x| *x).unwrap();
    assert_eq!(*end_of(&h, &ExpOfEndofunctor(id)).unwrap().0.vertex(), h.top());
    let l = lukasiewicz_chain(2).unwrap();
    let bot = Endofunctor::thin(&l, "bottom", |_| l.bottom()).unwrap();
    assert_eq!(*end_of(&l, &ExpOfEndofunctor(bot)).unwrap().0.vertex(), l.top());
}

#[test]
fn gamma_is_join_across_zoo() {
    for (k, (name, q)) in quantale_zoo().into_iter().enumerate().step_by(3) {
        let raw = q.to_raw();
        let mut r = rng(40 + k as u64);
        let d = random_diagram(&q, random_shape(&mut r, 4), &mut r);
        let g = gamma(&q, &d).unwrap();
        let xs: Vec<usize> = d.objects().iter().map(|x| raw_ix(&raw, q.name(*x))).collect();
        assert_eq!(*g.vertex(), el(&q, join_oracle(&raw, &xs)), "{name}");
    }
}
