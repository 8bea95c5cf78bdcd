//! Bifunctors `C^op × C → C`, their subdivision diagrams, ends as limits of
//! those diagrams, and the arrows into an end induced by wedges.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::category::{Category, Enumerable};
use crate::diagram::{Diagram, FunctorData};
use crate::error::{Error, Result};
use crate::fincat::{FinCategoryBuilder, ObjIx};
use crate::limits::{is_cone_morphism, limit, mediator, ConeData, LimitingCone, Limits};
use crate::smcc::{exp_co, exp_contra, Smcc};
use crate::transcript::{source, Transcript};

/// A functor `B: C^op × C → C`, contravariant in the first slot.
pub trait Bifunctor<A: Category> {
    fn on_objects(&self, cat: &A, x: &A::Obj, y: &A::Obj) -> Result<A::Obj>;
    /// `B(f, Y): B(X', Y) → B(X, Y)` for `f: X → X'`.
    fn on_left(&self, cat: &A, f: &A::Arr, y: &A::Obj) -> Result<A::Arr>;
    /// `B(X, g): B(X, Y) → B(X, Y')` for `g: Y → Y'`.
    fn on_right(&self, cat: &A, x: &A::Obj, g: &A::Arr) -> Result<A::Arr>;
}

/// Checks identities, composition in each slot, and that the two actions commute,
/// over every object and arrow.
pub fn verify_bifunctor<A: Enumerable, B: Bifunctor<A>>(cat: &A, b: &B) -> Transcript {
    let mut t = Transcript::new();
    let src = source::ENDS;
    let objs = cat.objects();
    let arrows = cat.arrows();
    let label = |f: &A::Arr| cat.arr_label(f);
    let eq = |t: &mut Transcript, law: &str, sides: Result<(A::Arr, A::Arr)>, ctx: &dyn Fn() -> String| {
        match sides {
            Ok((l, r)) => t.record(law, src, l == r, || format!("{}: {} != {}", ctx(), label(&l), label(&r))),
            Err(e) => t.record(law, src, false, || format!("{}: {e}", ctx())),
        };
    };
    for x in &objs {
        for y in &objs {
            eq(&mut t, "bifunctor.identity", (|| -> Result<_> {
                let bxy = b.on_objects(cat, x, y)?;
                let l = b.on_left(cat, &cat.identity(x), y)?;
                let r = b.on_right(cat, x, &cat.identity(y))?;
                if l != cat.identity(&bxy) {
                    return Ok((l, cat.identity(&bxy)));
                }
                Ok((r, cat.identity(&bxy)))
            })(), &|| format!("X = {}, Y = {}", cat.obj_label(x), cat.obj_label(y)));
        }
    }
    for f in &arrows {
        for g in arrows.iter().filter(|g| cat.src(g) == cat.tgt(f)) {
            for y in &objs {
                eq(&mut t, "bifunctor.left-composition", (|| -> Result<_> {
                    let gf = cat.compose(g, f)?;
                    Ok((b.on_left(cat, &gf, y)?, cat.compose(&b.on_left(cat, f, y)?, &b.on_left(cat, g, y)?)?))
                })(), &|| format!("f = {}, g = {}", label(f), label(g)));
                eq(&mut t, "bifunctor.right-composition", (|| -> Result<_> {
                    let gf = cat.compose(g, f)?;
                    Ok((b.on_right(cat, y, &gf)?, cat.compose(&b.on_right(cat, y, g)?, &b.on_right(cat, y, f)?)?))
                })(), &|| format!("f = {}, g = {}", label(f), label(g)));
            }
        }
    }
    // B(f, Y') ∘ B(X', g) = B(X, g) ∘ B(f, Y) for f: X → X', g: Y → Y'.
    for f in &arrows {
        for g in &arrows {
            eq(&mut t, "bifunctor.interchange", (|| -> Result<_> {
                let (x, x2) = (cat.src(f), cat.tgt(f));
                let (y, y2) = (cat.src(g), cat.tgt(g));
                let lhs = cat.compose(&b.on_left(cat, f, &y2)?, &b.on_right(cat, &x2, g)?)?;
                let rhs = cat.compose(&b.on_right(cat, &x, g)?, &b.on_left(cat, f, &y)?)?;
                Ok((lhs, rhs))
            })(), &|| format!("f = {}, g = {}", label(f), label(g)));
        }
    }
    t
}

/// The internal hom `(X, Y) ↦ Y^X`.
#[derive(Debug, Clone, Copy, Default)]
pub struct InternalHom;

impl<A: Smcc> Bifunctor<A> for InternalHom {
    fn on_objects(&self, cat: &A, x: &A::Obj, y: &A::Obj) -> Result<A::Obj> {
        cat.exponential(x, y)
    }

    fn on_left(&self, cat: &A, f: &A::Arr, y: &A::Obj) -> Result<A::Arr> {
        exp_contra(cat, f, y)
    }

    fn on_right(&self, cat: &A, x: &A::Obj, g: &A::Arr) -> Result<A::Arr> {
        exp_co(cat, g, x)
    }
}

/// The bifunctor constant at one object.
#[derive(Debug, Clone)]
pub struct Constant<O>(pub O);

impl<A: Category> Bifunctor<A> for Constant<A::Obj> {
    fn on_objects(&self, _cat: &A, _x: &A::Obj, _y: &A::Obj) -> Result<A::Obj> {
        Ok(self.0.clone())
    }

    fn on_left(&self, cat: &A, _f: &A::Arr, _y: &A::Obj) -> Result<A::Arr> {
        Ok(cat.identity(&self.0))
    }

    fn on_right(&self, cat: &A, _x: &A::Obj, _g: &A::Arr) -> Result<A::Arr> {
        Ok(cat.identity(&self.0))
    }
}

/// A tabulated endofunctor of an enumerable category.
#[derive(Debug, Clone)]
pub struct Endofunctor<O, M> {
    name: String,
    objects: BTreeMap<O, O>,
    arrows: HashMap<M, M>,
}

impl<O: Clone + Ord + std::fmt::Debug, M: Clone + Eq + std::hash::Hash> Endofunctor<O, M> {
    /// Tabulates `F` on every object and arrow, then checks the functor laws.
    pub fn tabulate<A>(
        cat: &A,
        name: &str,
        on_obj: impl Fn(&O) -> Result<O>,
        on_arr: impl Fn(&M) -> Result<M>,
    ) -> Result<Self>
    where
        A: Enumerable<Obj = O, Arr = M>,
    {
        let mut objects = BTreeMap::new();
        for x in cat.objects() {
            let fx = on_obj(&x)?;
            objects.insert(x, fx);
        }
        let mut arrows = HashMap::new();
        for f in cat.arrows() {
            let ff = on_arr(&f)?;
            arrows.insert(f, ff);
        }
        let e = Endofunctor { name: name.to_string(), objects, arrows };
        e.check(cat)?;
        Ok(e)
    }

    /// On a thin category an endofunctor is determined by a monotone object map.
    pub fn thin<A>(cat: &A, name: &str, on_obj: impl Fn(&O) -> O) -> Result<Self>
    where
        A: Enumerable<Obj = O, Arr = M>,
    {
        Self::tabulate(cat, name, |x| Ok(on_obj(x)), |f| {
            let (a, b) = (on_obj(&cat.src(f)), on_obj(&cat.tgt(f)));
            cat.hom(&a, &b).into_iter().next().ok_or_else(|| {
                Error::FunctorLaw(vec![format!(
                    "`{}` is not sent to an arrow: no arrow `{}` → `{}`",
                    cat.arr_label(f),
                    cat.obj_label(&a),
                    cat.obj_label(&b)
                )])
            })
        })
    }

    fn check<A>(&self, cat: &A) -> Result<()>
    where
        A: Enumerable<Obj = O, Arr = M>,
    {
        let mut bad = Vec::new();
        let arrows = cat.arrows();
        for f in &arrows {
            let ff = &self.arrows[f];
            if cat.src(ff) != self.objects[&cat.src(f)] || cat.tgt(ff) != self.objects[&cat.tgt(f)] {
                bad.push(format!("image of `{}` has the wrong endpoints", cat.arr_label(f)));
            }
        }
        for x in cat.objects() {
            if self.arrows[&cat.identity(&x)] != cat.identity(&self.objects[&x]) {
                bad.push(format!("identity of `{}` is not preserved", cat.obj_label(&x)));
            }
        }
        if bad.is_empty() {
            for f in &arrows {
                for g in arrows.iter().filter(|g| cat.src(g) == cat.tgt(f)) {
                    let gf = cat.compose(g, f)?;
                    if cat.compose(&self.arrows[g], &self.arrows[f]).ok().as_ref() != Some(&self.arrows[&gf]) {
                        bad.push(format!(
                            "composition of `{}` after `{}` is not preserved",
                            cat.arr_label(g),
                            cat.arr_label(f)
                        ));
                    }
                }
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::FunctorLaw(bad))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn obj(&self, x: &O) -> Result<O> {
        self.objects
            .get(x)
            .cloned()
            .ok_or_else(|| Error::mismatch(format!("object {x:?} is outside the tabulated domain")))
    }

    pub fn arr(&self, f: &M) -> Result<M> {
        self.arrows
            .get(f)
            .cloned()
            .ok_or_else(|| Error::mismatch("arrow is outside the tabulated domain"))
    }
}

/// `(X, Y) ↦ Y^{F(X)}` for an endofunctor `F`.
#[derive(Debug, Clone)]
pub struct ExpOfEndofunctor<O, M>(pub Endofunctor<O, M>);

impl<A: Smcc> Bifunctor<A> for ExpOfEndofunctor<A::Obj, A::Arr> {
    fn on_objects(&self, cat: &A, x: &A::Obj, y: &A::Obj) -> Result<A::Obj> {
        cat.exponential(&self.0.obj(x)?, y)
    }

    fn on_left(&self, cat: &A, f: &A::Arr, y: &A::Obj) -> Result<A::Arr> {
        exp_contra(cat, &self.0.arr(f)?, y)
    }

    fn on_right(&self, cat: &A, x: &A::Obj, g: &A::Arr) -> Result<A::Arr> {
        exp_co(cat, g, &self.0.obj(x)?)
    }
}

/// The subdivision diagram of a bifunctor, with the shape nodes of each
/// ambient object and arrow.
///
/// Shape objects are `obj:X` (image `B(X,X)`) and `arr:f` (image `B(X,Y)` for
/// `f: X → Y`); shape arrows `cov:f: obj:X → arr:f` (image `B(X,f)`) and
/// `con:f: obj:Y → arr:f` (image `B(f,Y)`). Identity arrows get nodes too.
#[derive(Debug)]
pub struct Subdivision<A: Category> {
    pub diagram: Diagram<A>,
    /// Ambient objects with their `obj:` node.
    pub object_nodes: Vec<(A::Obj, ObjIx)>,
    /// Ambient arrows with their `arr:` node.
    pub arrow_nodes: Vec<(A::Arr, ObjIx)>,
}

impl<A: Category> Clone for Subdivision<A> {
    fn clone(&self) -> Self {
        Subdivision {
            diagram: self.diagram.clone(),
            object_nodes: self.object_nodes.clone(),
            arrow_nodes: self.arrow_nodes.clone(),
        }
    }
}

pub fn subdivision<A: Enumerable, B: Bifunctor<A>>(cat: &A, b: &B) -> Result<Subdivision<A>> {
    let objs = cat.objects();
    let arrows = cat.arrows();
    let obj_ids: Vec<String> = objs.iter().map(|x| format!("obj:{}", cat.obj_label(x))).collect();
    let arr_ids: Vec<String> = arrows.iter().map(|f| format!("arr:{}", cat.arr_label(f))).collect();
    let mut builder = FinCategoryBuilder::new();
    for id in obj_ids.iter().chain(&arr_ids) {
        builder.object(id);
    }
    let obj_of: HashMap<&A::Obj, usize> = objs.iter().enumerate().map(|(k, x)| (x, k)).collect();
    for (k, f) in arrows.iter().enumerate() {
        let (x, y) = (obj_of[&cat.src(f)], obj_of[&cat.tgt(f)]);
        let l = cat.arr_label(f);
        builder.arrow(&format!("cov:{l}"), &obj_ids[x], &arr_ids[k]);
        builder.arrow(&format!("con:{l}"), &obj_ids[y], &arr_ids[k]);
    }
    let shape = Arc::new(builder.build().map_err(|e| {
        Error::InvalidInput(format!("ambient labels do not give distinct subdivision nodes: {e}"))
    })?);

    let mut images: Vec<Option<A::Obj>> = vec![None; shape.num_objects()];
    let mut arrow_images: Vec<Option<A::Arr>> = vec![None; shape.num_arrows()];
    let node = |id: &str| shape.object(id).expect("node was added");
    let mut object_nodes = Vec::new();
    for (x, id) in objs.iter().zip(&obj_ids) {
        let n = node(id);
        let bxx = b.on_objects(cat, x, x)?;
        arrow_images[shape.identity(&n).0] = Some(cat.identity(&bxx));
        images[n.0] = Some(bxx);
        object_nodes.push((x.clone(), n));
    }
    let mut arrow_nodes = Vec::new();
    for (f, id) in arrows.iter().zip(&arr_ids) {
        let n = node(id);
        let (x, y) = (cat.src(f), cat.tgt(f));
        let bxy = b.on_objects(cat, &x, &y)?;
        arrow_images[shape.identity(&n).0] = Some(cat.identity(&bxy));
        images[n.0] = Some(bxy);
        let l = cat.arr_label(f);
        let leg = |name: String| shape.arrow(&name).expect("leg was added").0;
        arrow_images[leg(format!("cov:{l}"))] = Some(b.on_right(cat, &x, f)?);
        arrow_images[leg(format!("con:{l}"))] = Some(b.on_left(cat, f, &y)?);
        arrow_nodes.push((f.clone(), n));
    }
    let diagram = FunctorData::new(
        cat,
        shape,
        images.into_iter().map(|o| o.expect("every node has an image")).collect(),
        arrow_images.into_iter().map(|a| a.expect("every shape arrow has an image")).collect(),
    )?;
    Ok(Subdivision { diagram, object_nodes, arrow_nodes })
}

/// An end `∫_X B(X,X)`: a limiting cone over the subdivision diagram.
#[derive(Debug)]
pub struct EndCone<A: Category> {
    pub subdivision: Subdivision<A>,
    pub limit: LimitingCone<A>,
    projections: BTreeMap<A::Obj, A::Arr>,
}

impl<A: Category> Clone for EndCone<A> {
    fn clone(&self) -> Self {
        EndCone {
            subdivision: self.subdivision.clone(),
            limit: self.limit.clone(),
            projections: self.projections.clone(),
        }
    }
}

impl<A: Category> EndCone<A> {
    /// Wraps a limiting cone over the subdivision diagram, reading off `π_X` at the `obj:` nodes.
    pub fn new(subdivision: Subdivision<A>, limit: LimitingCone<A>) -> Self {
        let projections = subdivision
            .object_nodes
            .iter()
            .map(|(x, n)| (x.clone(), limit.cone.edges[n.0].clone()))
            .collect();
        EndCone { subdivision, limit, projections }
    }

    pub fn vertex(&self) -> &A::Obj {
        self.limit.vertex()
    }

    /// `π_X: ∫ B → B(X,X)`.
    pub fn projection(&self, x: &A::Obj) -> Result<&A::Arr> {
        self.projections
            .get(x)
            .ok_or_else(|| Error::mismatch(format!("no projection at {x:?}")))
    }

    pub fn projections(&self) -> &BTreeMap<A::Obj, A::Arr> {
        &self.projections
    }
}

/// Records `B(X,f) ∘ g_X = B(f,Y) ∘ g_Y` for every arrow `f: X → Y`.
pub fn check_wedge<A: Enumerable, B: Bifunctor<A>>(
    cat: &A,
    b: &B,
    family: &BTreeMap<A::Obj, A::Arr>,
    law: &str,
    t: &mut Transcript,
) -> Result<()> {
    let mut first_bad = None;
    for f in cat.arrows() {
        let (x, y) = (cat.src(&f), cat.tgt(&f));
        let get = |o: &A::Obj| {
            family
                .get(o)
                .ok_or_else(|| Error::NotAWedge(format!("no component at `{}`", cat.obj_label(o))))
        };
        let lhs = cat.compose(&b.on_right(cat, &x, &f)?, get(&x)?)?;
        let rhs = cat.compose(&b.on_left(cat, &f, &y)?, get(&y)?)?;
        let ok = t.record(law, source::ENDS, lhs == rhs, || {
            format!("square over `{}` does not commute", cat.arr_label(&f))
        });
        if !ok && first_bad.is_none() {
            first_bad = Some(cat.arr_label(&f));
        }
    }
    match first_bad {
        Some(f) => Err(Error::NotAWedge(f)),
        None => Ok(()),
    }
}

/// The cone over the subdivision diagram carried by a wedge `g` with vertex `z`:
/// `g_X` at `obj:X` and `B(X,f) ∘ g_X` at `arr:f`.
pub fn wedge_cone<A: Category, B: Bifunctor<A>>(
    cat: &A,
    b: &B,
    sub: &Subdivision<A>,
    z: &A::Obj,
    family: &BTreeMap<A::Obj, A::Arr>,
) -> Result<crate::limits::Cone<A>> {
    let get = |o: &A::Obj| {
        family
            .get(o)
            .ok_or_else(|| Error::NotAWedge(format!("no component at `{}`", cat.obj_label(o))))
    };
    let mut edges: Vec<Option<A::Arr>> = vec![None; sub.diagram.shape().num_objects()];
    for (x, n) in &sub.object_nodes {
        edges[n.0] = Some(get(x)?.clone());
    }
    for (f, n) in &sub.arrow_nodes {
        let x = cat.src(f);
        edges[n.0] = Some(cat.compose(&b.on_right(cat, &x, f)?, get(&x)?)?);
    }
    Ok(ConeData {
        vertex: z.clone(),
        edges: edges.into_iter().map(|e| e.expect("every node has an edge")).collect(),
    })
}

/// `∫_X B(X,X)` as the limit of the subdivision diagram, with the wedge
/// condition checked on every ambient arrow.
pub fn end_of<A, B>(cat: &A, b: &B) -> Result<(EndCone<A>, Transcript)>
where
    A: Enumerable + Limits,
    B: Bifunctor<A>,
{
    let sub = subdivision(cat, b)?;
    let lim = limit(cat, &sub.diagram)?;
    let mut t = cat.verify_limit(&sub.diagram, &lim.cone);
    let end = EndCone::new(sub, lim);
    check_wedge(cat, b, &end.projections, "end.wedge", &mut t)?;
    Ok((end, t))
}

/// The unique `φ: Z → ∫ B` with `π_X ∘ φ = g_X`, for a wedge `g` with vertex `Z`.
///
/// Uniqueness is confirmed by scanning the whole hom-set.
pub fn wedge_mediator<A, B>(
    cat: &A,
    b: &B,
    end: &EndCone<A>,
    family: &BTreeMap<A::Obj, A::Arr>,
) -> Result<(A::Arr, Transcript)>
where
    A: Enumerable + Limits,
    B: Bifunctor<A>,
{
    let mut t = Transcript::new();
    let z = family
        .values()
        .next()
        .map(|g| cat.src(g))
        .ok_or_else(|| Error::NotAWedge("empty family".into()))?;
    if family.values().any(|g| cat.src(g) != z) {
        return Err(Error::NotAWedge("components do not share a source".into()));
    }
    check_wedge(cat, b, family, "wedge.commutes", &mut t)?;
    let cone = wedge_cone(cat, b, &end.subdivision, &z, family)?;
    let phi = mediator(cat, &end.limit, &cone)?;
    let count = cat
        .hom(&z, end.vertex())
        .iter()
        .filter(|h| is_cone_morphism(cat, &end.limit.cone, &cone, h))
        .count();
    t.record("wedge.unique-mediator", source::ENDS, count == 1, || {
        format!("{count} arrows factor the wedge at `{}`", cat.obj_label(&z))
    });
    Ok((phi, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::generators::{heyting_chain, lukasiewicz_chain};
    use crate::instances::Quantale;

    fn meet_of_homs(q: &Quantale) -> crate::instances::El {
        // ⋀ over all X ≤ Y of (X ⇒ Y): the meet over every subdivision node.
        let mut acc = q.top();
        for x in q.elements() {
            for y in q.elements() {
                if q.leq(x, y) {
                    acc = q.meet(acc, q.residual(x, y));
                }
            }
        }
        acc
    }

    #[test]
    fn subdivision_counts_on_three_chain() {
        let q = heyting_chain(3).unwrap();
        let s = subdivision(&q, &InternalHom).unwrap();
        let shape = s.diagram.shape();
        assert_eq!(s.object_nodes.len(), 3);
        assert_eq!(s.arrow_nodes.len(), 6);
        assert_eq!(shape.num_objects(), 9);
        // 12 legs plus one identity per node.
        assert_eq!(shape.num_arrows(), 12 + 9);
    }

    #[test]
    fn identity_node_legs_coincide() {
        let q = heyting_chain(3).unwrap();
        let s = subdivision(&q, &InternalHom).unwrap();
        let shape = s.diagram.shape();
        for x in q.elements() {
            let l = q.arr_label(&q.identity(&x));
            let cov = shape.arrow(&format!("cov:{l}")).unwrap();
            let con = shape.arrow(&format!("con:{l}")).unwrap();
            assert_eq!(s.diagram.arrow(cov), s.diagram.arrow(con));
        }
    }

    #[test]
    fn end_of_internal_hom_is_top() {
        for q in [heyting_chain(3).unwrap(), lukasiewicz_chain(2).unwrap()] {
            assert!(verify_bifunctor(&q, &InternalHom).all_pass());
            let (e, t) = end_of(&q, &InternalHom).unwrap();
            assert!(t.all_pass(), "{:?}", t.first_failure());
            assert_eq!(*e.vertex(), meet_of_homs(&q));
            assert_eq!(*e.vertex(), q.top());
        }
    }

    #[test]
    fn end_of_constant_is_constant() {
        let q = lukasiewicz_chain(4).unwrap();
        let c = q.element("1/2").unwrap();
        let (e, _) = end_of(&q, &Constant(c)).unwrap();
        assert_eq!(*e.vertex(), c);
    }

    #[test]
    fn wedge_mediator_of_projections_is_identity() {
        let q = lukasiewicz_chain(3).unwrap();
        let (e, _) = end_of(&q, &InternalHom).unwrap();
        let (phi, t) = wedge_mediator(&q, &InternalHom, &e, e.projections()).unwrap();
        assert_eq!(phi, q.identity(e.vertex()));
        assert!(t.all_pass());
    }

    #[test]
    fn non_wedge_is_rejected() {
        // B(X,Y) = Y^{F(X)} with F the identity; the family g_X = (bottom ≤ X^X) is a wedge,
        // but a family into a constant bifunctor that varies with X is not.
        let q = heyting_chain(3).unwrap();
        let b = Constant(q.top());
        let (e, _) = end_of(&q, &b).unwrap();
        let mut fam = BTreeMap::new();
        fam.insert(crate::instances::El(0), q.le(crate::instances::El(0), q.top()).unwrap());
        fam.insert(crate::instances::El(1), q.le(crate::instances::El(0), q.top()).unwrap());
        fam.insert(crate::instances::El(2), q.le(crate::instances::El(0), q.top()).unwrap());
        assert!(wedge_mediator(&q, &b, &e, &fam).is_ok());
        // Posetal wedges always commute, so break the shared-source condition instead.
        fam.insert(crate::instances::El(2), q.le(crate::instances::El(1), q.top()).unwrap());
        assert!(matches!(wedge_mediator(&q, &b, &e, &fam), Err(Error::NotAWedge(_))));
    }

    #[test]
    fn endofunctor_must_be_monotone() {
        let q = heyting_chain(3).unwrap();
        let top = q.top();
        let flip = |x: &crate::instances::El| crate::instances::El(2 - x.0);
        assert!(Endofunctor::thin(&q, "flip", flip).is_err());
        let f = Endofunctor::thin(&q, "const", |_| top).unwrap();
        let b = ExpOfEndofunctor(f);
        assert!(verify_bifunctor(&q, &b).all_pass());
        let (e, _) = end_of(&q, &b).unwrap();
        // ⋀_X (1 ⇒ X) = bottom.
        assert_eq!(*e.vertex(), q.bottom());
    }
}
