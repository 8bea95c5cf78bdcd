//! Equivalent diagrams have the same limits, and every finite diagram is
//! equivalent to one on a skeletal shape.

use std::sync::Arc;

use crate::category::{Category, Enumerable};
use crate::diagram::{validate_functor, Diagram, FinFunctor, FunctorData};
use crate::error::{Error, Result};
use crate::fincat::{ArrIx, FinCategory, ObjIx};
use crate::limits::{check_cone, mediator, Cone, ConeData, LimitingCone, LimitingConeData, Limits};
use crate::transcript::{source, Transcript};

/// Diagrams `d1: I1 → C`, `d2: I2 → C` related by an equivalence `Φ: I1 → I2`
/// with quasi-inverse `Ψ`.
///
/// * `gamma[i]: d2(Φ i) → d1(i)`, an isomorphism natural in `i`
/// * `alpha[j]: Φ(Ψ j) → j` in `I2`, natural and invertible
/// * `beta[i]: Ψ(Φ i) → i` in `I1`, natural and invertible
#[derive(Debug, Clone)]
pub struct DiagramEquivalence<O, M> {
    pub d1: FunctorData<O, M>,
    pub d2: FunctorData<O, M>,
    pub phi: FinFunctor,
    pub psi: FinFunctor,
    pub gamma: Vec<M>,
    pub alpha: Vec<ArrIx>,
    pub beta: Vec<ArrIx>,
}

pub type Equivalence<A> = DiagramEquivalence<<A as Category>::Obj, <A as Category>::Arr>;

/// Components `comps[x]: f(x) → x` of a natural isomorphism `f ⇒ 1` on `to`.
fn shape_naturality(to: &FinCategory, f: &FinFunctor, comps: &[ArrIx], name: &str) -> Result<()> {
    for x in to.object_ixs() {
        let c = comps[x.0];
        if to.tgt(&c) != x || to.src(&c) != *f.object(x) {
            return Err(Error::NotNatural(format!(
                "{name} at `{}` is `{}`, with the wrong endpoints",
                to.object_id(x),
                to.arrow_id(c)
            )));
        }
        if to.inverse(&c).is_none() {
            return Err(Error::NotInvertible(format!("{name} at `{}`", to.object_id(x))));
        }
    }
    for k in to.arrow_ixs() {
        let (x, y) = (to.src(&k), to.tgt(&k));
        let lhs = to.compose(&k, &comps[x.0])?;
        let rhs = to.compose(&comps[y.0], f.arrow(k))?;
        if lhs != rhs {
            return Err(Error::NotNatural(format!(
                "{name} square over `{}` does not commute",
                to.arrow_id(k)
            )));
        }
    }
    Ok(())
}

/// `second ∘ first`, valued in `target`.
fn compose_functors(target: &FinCategory, first: &FinFunctor, second: &FinFunctor) -> Result<FinFunctor> {
    let objects = first.objects().iter().map(|j| *second.object(*j)).collect();
    let arrows = first.arrows().iter().map(|a| *second.arrow(*a)).collect();
    FunctorData::new(target, first.shape().clone(), objects, arrows)
}

impl<O: Clone + Eq + std::fmt::Debug, M: Clone + Eq + std::fmt::Debug> DiagramEquivalence<O, M> {
    /// Checks functoriality of `Φ`, `Ψ` and naturality and invertibility of `γ`, `α`, `β`.
    pub fn validate<A>(&self, cat: &A) -> Result<()>
    where
        A: Category<Obj = O, Arr = M>,
    {
        let (i1, i2) = (self.d1.shape(), self.d2.shape());
        if self.phi.shape().as_ref() != i1.as_ref() || self.psi.shape().as_ref() != i2.as_ref() {
            return Err(Error::mismatch("Φ and Ψ must start at the shapes of d1 and d2"));
        }
        validate_functor(i2.as_ref(), &self.phi)?;
        validate_functor(i1.as_ref(), &self.psi)?;
        if self.gamma.len() != i1.num_objects()
            || self.beta.len() != i1.num_objects()
            || self.alpha.len() != i2.num_objects()
        {
            return Err(Error::mismatch("natural transformation has the wrong number of components"));
        }
        shape_naturality(i2, &compose_functors(i2, &self.psi, &self.phi)?, &self.alpha, "α")?;
        shape_naturality(i1, &compose_functors(i1, &self.phi, &self.psi)?, &self.beta, "β")?;
        for i in i1.object_ixs() {
            let g = &self.gamma[i.0];
            if cat.src(g) != *self.d2.object(*self.phi.object(i)) || cat.tgt(g) != *self.d1.object(i) {
                return Err(Error::NotNatural(format!(
                    "γ at `{}` has the wrong endpoints",
                    i1.object_id(i)
                )));
            }
            if cat.inverse(g).is_none() {
                return Err(Error::NotInvertible(format!("γ at `{}`", i1.object_id(i))));
            }
        }
        for t in i1.arrow_ixs() {
            let (i, k) = (i1.src(&t), i1.tgt(&t));
            let lhs = cat.compose(self.d1.arrow(t), &self.gamma[i.0])?;
            let rhs = cat.compose(&self.gamma[k.0], self.d2.arrow(*self.phi.arrow(t)))?;
            if lhs != rhs {
                return Err(Error::NotNatural(format!(
                    "γ square over `{}` does not commute",
                    i1.arrow_id(t)
                )));
            }
        }
        Ok(())
    }
}

fn inverse_of<A: Category>(cat: &A, f: &A::Arr) -> Result<A::Arr> {
    cat.inverse(f)
        .ok_or_else(|| Error::NotInvertible(cat.arr_label(f)))
}

/// `δ_j = d2(α_j) ∘ γ_{Ψ j}^{-1}: d1(Ψ j) → d2(j)`, checked natural in `j`.
pub fn pointwise_iso<A: Category>(cat: &A, e: &Equivalence<A>) -> Result<(Vec<A::Arr>, Transcript)> {
    let i2 = e.d2.shape();
    let mut deltas = Vec::with_capacity(i2.num_objects());
    for j in i2.object_ixs() {
        let pj = *e.psi.object(j);
        let g_inv = inverse_of(cat, &e.gamma[pj.0])?;
        deltas.push(cat.compose(e.d2.arrow(e.alpha[j.0]), &g_inv)?);
    }
    let mut t = Transcript::new();
    for k in i2.arrow_ixs() {
        let (j, j2) = (i2.src(&k), i2.tgt(&k));
        let lhs = cat.compose(e.d2.arrow(k), &deltas[j.0])?;
        let rhs = cat.compose(&deltas[j2.0], e.d1.arrow(*e.psi.arrow(k)))?;
        let ok = t.record("delta.natural", source::EQUIVALENT_DIAGRAMS, lhs == rhs, || {
            format!("square over `{}`", i2.arrow_id(k))
        });
        if !ok {
            return Err(Error::NotNatural(format!(
                "δ square over `{}` does not commute",
                i2.arrow_id(k)
            )));
        }
    }
    for (j, d) in deltas.iter().enumerate() {
        t.record("delta.invertible", source::EQUIVALENT_DIAGRAMS, cat.inverse(d).is_some(), || {
            format!("δ at `{}`", i2.object_id(ObjIx(j)))
        });
    }
    Ok((deltas, t))
}

/// The same equivalence read from `d2` to `d1`: `Φ` and `Ψ` trade places,
/// `γ` becomes `δ`, and `α`, `β` trade places.
pub fn invert<A: Category>(cat: &A, e: &Equivalence<A>) -> Result<Equivalence<A>> {
    let (deltas, _) = pointwise_iso(cat, e)?;
    Ok(DiagramEquivalence {
        d1: e.d2.clone(),
        d2: e.d1.clone(),
        phi: e.psi.clone(),
        psi: e.phi.clone(),
        gamma: deltas,
        alpha: e.beta.clone(),
        beta: e.alpha.clone(),
    })
}

/// The limit of `d1` carried to `d2`: same vertex, edges `δ_j ∘ μ_{Ψ j}`.
///
/// The result is verified with the ambient's limit check, and the step that
/// recovers every `μ_i` from the new edges (so factorizations stay unique) is
/// replayed as `μ_i = d1(β_i) ∘ δ_{Φ i}^{-1} ∘ ν_{Φ i}`.
pub fn transport_limit<A: Limits>(
    cat: &A,
    e: &Equivalence<A>,
    l1: &LimitingCone<A>,
) -> Result<(LimitingCone<A>, Transcript)> {
    e.validate(cat)?;
    let (deltas, mut t) = pointwise_iso(cat, e)?;
    let i2 = e.d2.shape();
    let edges = i2
        .object_ixs()
        .map(|j| cat.compose(&deltas[j.0], &l1.cone.edges[e.psi.object(j).0]))
        .collect::<Result<Vec<_>>>()?;
    let cone = ConeData { vertex: l1.cone.vertex.clone(), edges };
    check_cone(cat, &e.d2, &cone)?;
    t.record("transport.same-vertex", source::EQUIVALENT_DIAGRAMS, cone.vertex == l1.cone.vertex, || {
        "vertex changed".into()
    });
    for i in e.d1.shape().object_ixs() {
        let fi = *e.phi.object(i);
        let recovered = cat.compose_path(&[
            &cone.edges[fi.0],
            &inverse_of(cat, &deltas[fi.0])?,
            e.d1.arrow(e.beta[i.0]),
        ])?;
        t.equal("transport.projection-recovery", source::EQUIVALENT_DIAGRAMS, &recovered, &l1.cone.edges[i.0], || {
            format!("μ at `{}`", e.d1.shape().object_id(i))
        });
    }
    t.extend(cat.verify_limit(&e.d2, &cone));
    Ok((LimitingConeData { diagram: e.d2.clone(), cone }, t))
}

/// Replays the factorization of a cone `ρ` over `d2` through the transported
/// limit: `ρ` is pulled back along `γ` to `ρ'_i = γ_i ∘ ρ_{Φ i}`, factored
/// through `l1`, and the factorization is checked against `ρ`.
pub fn replay_factorization<A: Limits>(
    cat: &A,
    e: &Equivalence<A>,
    l1: &LimitingCone<A>,
    l2: &LimitingCone<A>,
    rho: &Cone<A>,
    t: &mut Transcript,
) -> Result<A::Arr> {
    check_cone(cat, &e.d2, rho)?;
    let pulled = ConeData {
        vertex: rho.vertex.clone(),
        edges: e
            .d1
            .shape()
            .object_ixs()
            .map(|i| cat.compose(&e.gamma[i.0], &rho.edges[e.phi.object(i).0]))
            .collect::<Result<Vec<_>>>()?,
    };
    let f = mediator(cat, l1, &pulled)?;
    for (j, (nu, r)) in l2.edges().iter().zip(&rho.edges).enumerate() {
        t.equal("transport.factorization", source::EQUIVALENT_DIAGRAMS, &cat.compose(nu, &f)?, r, || {
            format!("edge at `{}`", e.d2.shape().object_id(ObjIx(j)))
        });
    }
    Ok(f)
}

/// Isomorphism classes of a finite category's objects, each listed from its
/// least id, and for every object `j` an isomorphism `rep(j) → j`.
pub fn iso_classes(shape: &FinCategory) -> (Vec<ObjIx>, Vec<ArrIx>) {
    let n = shape.num_objects();
    let mut rep: Vec<Option<ObjIx>> = vec![None; n];
    let mut to_member = vec![ArrIx(0); n];
    for j in shape.object_ixs() {
        if rep[j.0].is_some() {
            continue;
        }
        rep[j.0] = Some(j);
        to_member[j.0] = shape.identity(&j);
        for k in shape.object_ixs().skip(j.0 + 1) {
            if rep[k.0].is_some() {
                continue;
            }
            if let Some(u) = shape.hom(&j, &k).into_iter().find(|u| shape.inverse(u).is_some()) {
                rep[k.0] = Some(j);
                to_member[k.0] = u;
            }
        }
    }
    (rep.into_iter().map(|r| r.expect("every object is classified")).collect(), to_member)
}

/// Restricts `d` to one object per isomorphism class of its shape.
///
/// Returns the restricted diagram with the equivalence whose `d1` is the
/// restriction and `d2` is `d`; `Φ` is the inclusion and `Ψ` sends each object
/// to its representative, the least id in its class.
pub fn skeletonize<A: Category>(cat: &A, d: &Diagram<A>) -> Result<(Diagram<A>, Equivalence<A>)> {
    let shape = d.shape();
    let (rep, u) = iso_classes(shape);
    let mut reps: Vec<ObjIx> = rep.clone();
    reps.sort();
    reps.dedup();
    let skel = Arc::new(shape.full_subcategory(&reps));
    let obj_in_skel = |x: ObjIx| skel.object(shape.object_id(x)).expect("representative kept");
    let arr_in_skel = |a: ArrIx| skel.arrow(shape.arrow_id(a)).expect("arrow between representatives kept");

    let phi = FunctorData::new(
        shape.as_ref(),
        skel.clone(),
        skel.object_ixs().map(|i| shape.object(skel.object_id(i)).expect("same id")).collect(),
        skel.arrow_ixs().map(|a| shape.arrow(skel.arrow_id(a)).expect("same id")).collect(),
    )?;
    let psi_arrows = shape
        .arrow_ixs()
        .map(|k| {
            let (j, j2) = (shape.src(&k), shape.tgt(&k));
            let back = shape.inverse(&u[j2.0]).expect("class isomorphism");
            Ok(arr_in_skel(shape.compose_path(&[&u[j.0], &k, &back])?))
        })
        .collect::<Result<Vec<_>>>()?;
    let psi = FunctorData::new(
        skel.as_ref(),
        shape.clone(),
        shape.object_ixs().map(|j| obj_in_skel(rep[j.0])).collect(),
        psi_arrows,
    )?;
    let d1 = d.precompose(cat, &phi)?;
    let gamma = d1.objects().iter().map(|o| cat.identity(o)).collect();
    let beta = skel.object_ixs().map(|i| skel.identity(&i)).collect();
    let e = DiagramEquivalence { d1: d1.clone(), d2: d.clone(), phi, psi, gamma, alpha: u, beta };
    e.validate(cat)?;
    Ok((d1, e))
}

/// An isomorphism `r` with `m2 ∘ r = m`, if the two arrows present the same subobject.
pub fn subobject_iso<A: Enumerable>(cat: &A, m: &A::Arr, m2: &A::Arr) -> Option<A::Arr> {
    if cat.tgt(m) != cat.tgt(m2) {
        return None;
    }
    cat.hom(&cat.src(m), &cat.src(m2))
        .into_iter()
        .find(|r| cat.inverse(r).is_some() && cat.compose(m2, r).ok().as_ref() == Some(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategoryBuilder;
    use crate::limits::{all_cones, limit};

    fn preorder(objs: &[&str], leq: &[(&str, &str)]) -> FinCategory {
        let objs: Vec<String> = objs.iter().map(|s| s.to_string()).collect();
        let leq: Vec<(String, String)> = leq.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        FinCategory::from_preorder(&objs, &leq).unwrap()
    }

    fn thin_diagram(c: &FinCategory, shape: Arc<FinCategory>, objs: &[&str]) -> Diagram<FinCategory> {
        let objs = objs.iter().map(|o| c.object(o).unwrap()).collect();
        FunctorData::from_object_map(c, shape, objs, |x, y| {
            c.hom(x, y).first().copied().ok_or_else(|| Error::mismatch("no arrow"))
        })
        .unwrap()
    }

    fn chaotic(ids: &[&str]) -> Arc<FinCategory> {
        let pairs: Vec<(&str, &str)> =
            ids.iter().flat_map(|a| ids.iter().map(move |b| (*a, *b))).collect();
        Arc::new(preorder(ids, &pairs))
    }

    #[test]
    fn identity_equivalence_gives_identity_deltas() {
        let c = preorder(&["0", "a", "1"], &[("0", "a"), ("a", "1")]);
        let shape = Arc::new(preorder(&["p", "q"], &[("p", "q")]));
        let d = thin_diagram(&c, shape.clone(), &["0", "a"]);
        let (d1, e) = skeletonize(&c, &d).unwrap();
        assert_eq!(d1.objects(), d.objects());
        let (deltas, _) = pointwise_iso(&c, &e).unwrap();
        assert!(deltas.iter().all(|x| c.is_identity(x)));
        let l1 = limit(&c, &d1).unwrap();
        let (l2, t) = transport_limit(&c, &e, &l1).unwrap();
        assert!(t.all_pass());
        assert_eq!(l2.cone, l1.cone);
    }

    #[test]
    fn chaotic_shape_collapses_to_one_object() {
        let c = preorder(&["0", "a", "1"], &[("0", "a"), ("a", "1")]);
        let shape = chaotic(&["x", "y", "z"]);
        let d = thin_diagram(&c, shape, &["a", "a", "a"]);
        let (d1, e) = skeletonize(&c, &d).unwrap();
        assert_eq!(d1.shape().num_objects(), 1);
        let l1 = limit(&c, &d1).unwrap();
        let (l2, t) = transport_limit(&c, &e, &l1).unwrap();
        assert!(t.all_pass(), "{:?}", t.first_failure());
        assert_eq!(l2.cone.vertex, limit(&c, &d).unwrap().cone.vertex);
        let back = invert(&c, &e).unwrap();
        back.validate(&c).unwrap();
        let (l3, t3) = transport_limit(&c, &back, &l2).unwrap();
        assert!(t3.all_pass());
        assert_eq!(l3.cone, l1.cone);
        for rho in all_cones(&c, &d).unwrap() {
            let mut t = Transcript::new();
            replay_factorization(&c, &e, &l1, &l2, &rho, &mut t).unwrap();
            assert!(t.all_pass());
        }
    }

    #[test]
    fn redundant_copy_in_thick_ambient() {
        // Ambient with an isomorphic pair a ≅ a'; the diagram hits both copies.
        let c = preorder(&["0", "a", "a'", "1"], &[("0", "a"), ("a", "a'"), ("a'", "a"), ("a", "1")]);
        let shape = chaotic(&["x", "y"]);
        let d = thin_diagram(&c, shape, &["a", "a'"]);
        let (d1, e) = skeletonize(&c, &d).unwrap();
        assert_eq!(d1.shape().num_objects(), 1);
        let (_, tp) = pointwise_iso(&c, &e).unwrap();
        assert!(tp.all_pass());
        let l1 = limit(&c, &d1).unwrap();
        let (l2, t) = transport_limit(&c, &e, &l1).unwrap();
        assert!(t.all_pass(), "{:?}", t.first_failure());
        assert_eq!(l2.cone.vertex, l1.cone.vertex);
    }

    #[test]
    fn non_natural_gamma_is_rejected() {
        // Two parallel arrows s, t: x → y in the ambient; d1 = d2 sends p: i → j to s,
        // and γ is the identity at i but an automorphism-free swap is impossible,
        // so use a non-identity endomorphism e with e ∘ s = t.
        let mut b = FinCategoryBuilder::new();
        b.object("x")
            .object("y")
            .arrow("s", "x", "y")
            .arrow("t", "x", "y")
            .arrow("w", "y", "y")
            .composite("w", "s", "t")
            .composite("w", "t", "s")
            .composite("w", "w", "id:y");
        let c = b.build().unwrap();
        let shape = Arc::new(preorder(&["i", "j"], &[("i", "j")]));
        let (x, y) = (c.object("x").unwrap(), c.object("y").unwrap());
        let s = c.arrow("s").unwrap();
        let d = FunctorData::new(&c, shape.clone(), vec![x, y], vec![c.identity(&x), s, c.identity(&y)]).unwrap();
        let (_, mut e) = skeletonize(&c, &d).unwrap();
        e.gamma[1] = c.arrow("w").unwrap();
        assert!(matches!(e.validate(&c), Err(Error::NotNatural(_))));
    }

    #[test]
    fn subobject_iso_in_preorder() {
        let c = preorder(&["a", "a'", "1"], &[("a", "a'"), ("a'", "a"), ("a", "1")]);
        let m = c.hom(&c.object("a").unwrap(), &c.object("1").unwrap())[0];
        let m2 = c.hom(&c.object("a'").unwrap(), &c.object("1").unwrap())[0];
        let r = subobject_iso(&c, &m, &m2).unwrap();
        assert_eq!(c.compose(&m2, &r).unwrap(), m);
    }
}
