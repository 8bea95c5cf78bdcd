//! Refining a weakly initial object to an initial one.
//!
//! The joint equalizer `u: v → w` of all endomorphisms of a weakly initial
//! `w` is initial. Only the limits this argument needs are requested from the
//! category: that joint equalizer, and the equalizer of any parallel pair out
//! of `v` that would contradict initiality.

use std::sync::Arc;

use crate::category::{Category, Enumerable};
use crate::diagram::FunctorData;
use crate::error::{Error, Result};
use crate::fincat::FinCategoryBuilder;
use crate::transcript::{source, Transcript};

use super::brute::limit_brute;

#[derive(Debug, Clone)]
pub struct FreydOutcome<O, M> {
    pub initial: O,
    /// The equalizer arrow `v → w`.
    pub to_weak: M,
    /// An arrow `r: w → v` with `r ∘ to_weak = id_v`.
    pub retraction: M,
    pub transcript: Transcript,
}

/// The joint equalizer of parallel arrows, as its vertex and its edge into the domain.
fn joint_equalizer<A: Enumerable>(cat: &A, arrows: &[A::Arr]) -> Result<(A::Obj, A::Arr)> {
    let (x, y) = (cat.src(&arrows[0]), cat.tgt(&arrows[0]));
    let mut b = FinCategoryBuilder::new();
    b.object("dom").object("cod");
    let names: Vec<String> = (0..arrows.len()).map(|k| format!("e{k:04}")).collect();
    for n in &names {
        b.arrow(n, "dom", "cod");
    }
    let shape = Arc::new(b.build()?);
    let dom = shape.object("dom").expect("dom");
    let cod = shape.object("cod").expect("cod");
    let mut objects = vec![y.clone(); 2];
    objects[dom.0] = x.clone();
    let mut images = vec![None; shape.num_arrows()];
    images[shape.identity(&dom).0] = Some(cat.identity(&x));
    images[shape.identity(&cod).0] = Some(cat.identity(&y));
    for (n, f) in names.iter().zip(arrows) {
        images[shape.arrow(n).expect("named").0] = Some(f.clone());
    }
    let images = images.into_iter().map(|a| a.expect("all arrows mapped")).collect();
    let d = FunctorData::new(cat, shape.clone(), objects, images)?;
    let cone = limit_brute(cat, &d).map_err(|_| {
        let label = |k: usize| cat.arr_label(&arrows[k.min(arrows.len() - 1)]);
        Error::MissingLimit(label(0), label(1))
    })?;
    let edge = cone.edges[dom.0].clone();
    Ok((cone.vertex, edge))
}

/// Given a weakly initial `w`, returns an initial `v` with `u: v → w` and a retraction of `u`.
pub fn freyd_refine<A: Enumerable>(cat: &A, w: &A::Obj) -> Result<FreydOutcome<A::Obj, A::Arr>> {
    let mut t = Transcript::new();
    let objs = cat.objects();
    for x in &objs {
        let ok = t.record("freyd.weakly-initial", source::INITIAL_OBJECT, !cat.hom(w, x).is_empty(), || {
            format!("no arrow to `{}`", cat.obj_label(x))
        });
        if !ok {
            return Err(Error::NotWeaklyInitial(cat.obj_label(w)));
        }
    }

    let endos = cat.hom(w, w);
    let (v, u) = joint_equalizer(cat, &endos)?;
    for e in &endos {
        t.equal(
            "freyd.equalizes-endomorphisms",
            source::INITIAL_OBJECT,
            &cat.compose(e, &u)?,
            &u,
            || format!("endomorphism {}", cat.arr_label(e)),
        );
    }

    for x in &objs {
        let hom = cat.hom(&v, x);
        if hom.len() > 1 {
            // Two distinct arrows out of v: their equalizer k: E → v would be split
            // epi by weak initiality of w, forcing them equal.
            let (f, g) = (&hom[0], &hom[1]);
            let (pair, _) = joint_equalizer(cat, &[f.clone(), g.clone()])?;
            t.record("freyd.unique-arrow", source::INITIAL_OBJECT, false, || {
                format!(
                    "`{}` and `{}` out of `{}` are distinct although their equalizer at `{}` exists",
                    cat.arr_label(f),
                    cat.arr_label(g),
                    cat.obj_label(&v),
                    cat.obj_label(&pair)
                )
            });
            return Err(Error::VerificationFailed(format!(
                "refined object `{}` is not initial",
                cat.obj_label(&v)
            )));
        }
        t.record("freyd.unique-arrow", source::INITIAL_OBJECT, hom.len() == 1, || {
            format!("no arrow `{}` → `{}`", cat.obj_label(&v), cat.obj_label(x))
        });
    }

    let id_v = cat.identity(&v);
    let retraction = cat
        .hom(w, &v)
        .into_iter()
        .find(|r| cat.compose(r, &u).ok().as_ref() == Some(&id_v));
    t.record("freyd.retraction", source::INITIAL_OBJECT, retraction.is_some(), || {
        format!("no retraction of `{}`", cat.arr_label(&u))
    });
    let retraction = retraction.ok_or_else(|| {
        Error::VerificationFailed(format!("`{}` has no retraction", cat.arr_label(&u)))
    })?;
    Ok(FreydOutcome { initial: v, to_weak: u, retraction, transcript: t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::limits::initial_object_brute;

    /// An idempotent `e = i∘r` on `w` split through `v`, plus an object `x`.
    fn split_idempotent() -> FinCategory {
        let mut b = FinCategoryBuilder::new();
        b.object("v")
            .object("w")
            .object("x")
            .arrow("i", "v", "w")
            .arrow("r", "w", "v")
            .arrow("e", "w", "w")
            .arrow("a", "w", "x")
            .arrow("b", "v", "x")
            .composite("r", "i", "id:v")
            .composite("i", "r", "e")
            .composite("e", "e", "e")
            .composite("e", "i", "i")
            .composite("r", "e", "r")
            .composite("a", "e", "a")
            .composite("a", "i", "b")
            .composite("b", "r", "a");
        b.build().unwrap()
    }

    #[test]
    fn endomorphism_is_equalized_away() {
        let c = split_idempotent();
        let w = c.object("w").unwrap();
        let out = freyd_refine(&c, &w).unwrap();
        assert_eq!(c.object_id(out.initial), "v");
        assert_eq!(out.initial, initial_object_brute(&c).unwrap());
        assert_eq!(c.arrow_id(out.to_weak), "i");
        assert_eq!(c.arrow_id(out.retraction), "r");
        assert!(out.transcript.all_pass());
    }

    #[test]
    fn initial_input_is_returned_unchanged() {
        let objs = ["0", "1"].map(String::from);
        let c = FinCategory::from_preorder(&objs, &[("0".into(), "1".into())]).unwrap();
        let zero = c.object("0").unwrap();
        let out = freyd_refine(&c, &zero).unwrap();
        assert_eq!(out.initial, zero);
        assert_eq!(out.retraction, c.identity(&zero));
    }

    #[test]
    fn not_weakly_initial_is_rejected() {
        let objs = ["0", "1"].map(String::from);
        let c = FinCategory::from_preorder(&objs, &[("0".into(), "1".into())]).unwrap();
        let one = c.object("1").unwrap();
        assert!(matches!(freyd_refine(&c, &one), Err(Error::NotWeaklyInitial(_))));
    }
}
