//! The end `∫_X X^{F(X)}` built from a cogenerating family.
//!
//! Each `X^{F(X)}` is embedded, through the limit `M_X` of a span family, as a
//! subobject of the single object `P^{F(P)}`. The limit of all those
//! subobjects, taken over a skeleton of their diagram, is the end.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::{Category, Enumerable};
use crate::diagram::{Diagram, FunctorData};
use crate::ends::{check_wedge, subdivision, wedge_cone, Bifunctor, EndCone, Endofunctor, ExpOfEndofunctor, Subdivision};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinCategoryBuilder, ObjIx};
use crate::limits::{all_cones, limit, mediator, ConeData, LimitingCone, LimitingConeData, Limits};
use crate::transcript::{source, Transcript};
use crate::transport::{skeletonize, subobject_iso, transport_limit, Equivalence};

/// Checks that every pair of distinct parallel arrows `f, g: X → Y` is told
/// apart by some `h: Y → G` into the family.
pub fn verify_cogenerating<A: Enumerable>(cat: &A, family: &[A::Obj], t: &mut Transcript) -> Result<()> {
    let objs = cat.objects();
    for x in &objs {
        for y in &objs {
            let hom = cat.hom(x, y);
            for (k, f) in hom.iter().enumerate() {
                for g in &hom[k + 1..] {
                    let separated = family.iter().any(|gen| {
                        cat.hom(y, gen).iter().any(|h| cat.compose(h, f).ok() != cat.compose(h, g).ok())
                    });
                    let ok = t.record("lemma2.cogenerating", source::END_EXISTENCE, separated, || {
                        format!("`{}` and `{}` are not separated", cat.arr_label(f), cat.arr_label(g))
                    });
                    if !ok {
                        return Err(Error::VerificationFailed(format!(
                            "the family does not separate `{}` and `{}`",
                            cat.arr_label(f),
                            cat.arr_label(g)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The limit `M_X` of the span family `P^{F(φ)}`, `φ^{F(X)}` over all `φ: X → P`.
#[derive(Debug, Clone)]
pub struct SpanLimit<A: Category> {
    pub object: A::Obj,
    pub phis: Vec<A::Arr>,
    pub limit: LimitingCone<A>,
    top: ObjIx,
    bottom: ObjIx,
}

impl<A: Category> SpanLimit<A> {
    pub fn vertex(&self) -> &A::Obj {
        self.limit.vertex()
    }

    /// `m_X: M_X → P^{F(P)}`.
    pub fn m(&self) -> &A::Arr {
        &self.limit.edges()[self.top.0]
    }

    /// `n_X: M_X → X^{F(X)}`.
    pub fn n(&self) -> &A::Arr {
        &self.limit.edges()[self.bottom.0]
    }

    fn cone_from(&self, cat: &A, b: &impl Bifunctor<A>, top: &A::Arr, bottom: &A::Arr) -> Result<crate::limits::Cone<A>> {
        let d = &self.limit.diagram;
        let mut edges = vec![top.clone(); d.shape().num_objects()];
        edges[self.bottom.0] = bottom.clone();
        for (k, phi) in self.phis.iter().enumerate() {
            let node = d.shape().object(&phi_id(k)).expect("span node");
            edges[node.0] = cat.compose(&b.on_right(cat, &self.object, phi)?, bottom)?;
        }
        Ok(ConeData { vertex: cat.src(bottom), edges })
    }
}

fn phi_id(k: usize) -> String {
    format!("phi{k:04}")
}

fn span_limit<A: Enumerable + Limits>(
    cat: &A,
    b: &ExpOfEndofunctor<A::Obj, A::Arr>,
    p: &A::Obj,
    x: &A::Obj,
) -> Result<SpanLimit<A>>
where
    ExpOfEndofunctor<A::Obj, A::Arr>: Bifunctor<A>,
{
    let phis = cat.hom(x, p);
    let mut sb = FinCategoryBuilder::new();
    sb.object("top").object("bottom");
    for k in 0..phis.len() {
        sb.object(&phi_id(k))
            .arrow(&format!("m{k:04}"), "top", &phi_id(k))
            .arrow(&format!("n{k:04}"), "bottom", &phi_id(k));
    }
    let shape = Arc::new(sb.build()?);
    let mut objects = BTreeMap::new();
    let mut arrows = BTreeMap::new();
    objects.insert("top".to_string(), b.on_objects(cat, p, p)?);
    objects.insert("bottom".to_string(), b.on_objects(cat, x, x)?);
    arrows.insert("id:top".to_string(), cat.identity(&objects["top"]));
    arrows.insert("id:bottom".to_string(), cat.identity(&objects["bottom"]));
    for (k, phi) in phis.iter().enumerate() {
        let node = b.on_objects(cat, x, p)?;
        arrows.insert(format!("id:{}", phi_id(k)), cat.identity(&node));
        objects.insert(phi_id(k), node);
        arrows.insert(format!("m{k:04}"), b.on_left(cat, phi, p)?);
        arrows.insert(format!("n{k:04}"), b.on_right(cat, x, phi)?);
    }
    let d = FunctorData::from_maps(cat, shape.clone(), &objects, &arrows)?;
    let limit = limit(cat, &d)?;
    Ok(SpanLimit {
        object: x.clone(),
        phis,
        limit,
        top: shape.object("top").expect("top"),
        bottom: shape.object("bottom").expect("bottom"),
    })
}

/// Cancellation of `m_X` over every parallel pair `u, v: Z → M_X`, with the
/// separating step `n_X ∘ u = n_X ∘ v` replayed whenever `m_X ∘ u = m_X ∘ v`.
fn mono_certificate<A: Enumerable>(
    cat: &A,
    b: &impl Bifunctor<A>,
    span: &SpanLimit<A>,
    t: &mut Transcript,
) -> Result<()> {
    let src = source::END_EXISTENCE;
    let (m, n) = (span.m(), span.n());
    for z in cat.objects() {
        let hom = cat.hom(&z, span.vertex());
        for (k, u) in hom.iter().enumerate() {
            for v in &hom[k..] {
                if cat.compose(m, u)? != cat.compose(m, v)? {
                    continue;
                }
                let (nu, nv) = (cat.compose(n, u)?, cat.compose(n, v)?);
                for phi in &span.phis {
                    let sep = b.on_right(cat, &span.object, phi)?;
                    t.equal("lemma2.mono-separated", src, &cat.compose(&sep, &nu)?, &cat.compose(&sep, &nv)?, || {
                        format!("φ = {}", cat.arr_label(phi))
                    });
                }
                t.equal("lemma2.mono-bottom-leg", src, &nu, &nv, || format!("Z = {}", cat.obj_label(&z)));
                let ok = t.equal("lemma2.mono", src, u, v, || {
                    format!("m at `{}` does not cancel", cat.obj_label(&span.object))
                });
                if !ok {
                    return Err(Error::MonoCertificateFailure(format!(
                        "m at `{}` identifies `{}` and `{}`",
                        cat.obj_label(&span.object),
                        cat.arr_label(u),
                        cat.arr_label(v)
                    )));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Lemma2Result<A: Category> {
    pub family: Vec<A::Obj>,
    /// The product `P` of the family.
    pub product: LimitingCone<A>,
    pub spans: BTreeMap<A::Obj, SpanLimit<A>>,
    /// All `m_X` and the isomorphisms `r_{X,Y}` with `m_Y ∘ r_{X,Y} = m_X`.
    pub m_diagram: Diagram<A>,
    pub skeleton: Diagram<A>,
    pub equivalence: Equivalence<A>,
    /// The limiting cone `ζ` over `m_diagram`.
    pub limit: LimitingCone<A>,
    pub zeta: BTreeMap<A::Obj, A::Arr>,
    /// `π_X = n_X ∘ ζ_X`.
    pub projections: BTreeMap<A::Obj, A::Arr>,
    pub end: EndCone<A>,
    pub transcript: Transcript,
}

impl<A: Category> Lemma2Result<A> {
    pub fn vertex(&self) -> &A::Obj {
        self.limit.vertex()
    }
}

fn node_id(k: usize) -> String {
    format!("M{k:04}")
}

/// `∫_X X^{F(X)}` through the cogenerator `P = Π family`, replaying the wedge
/// condition and terminality against every wedge.
pub fn end_via_lemma2<A>(cat: &A, f: &Endofunctor<A::Obj, A::Arr>, family: &[A::Obj]) -> Result<Lemma2Result<A>>
where
    A: Enumerable + Limits,
    ExpOfEndofunctor<A::Obj, A::Arr>: Bifunctor<A>,
{
    let src = source::END_EXISTENCE;
    let mut t = Transcript::new();
    verify_cogenerating(cat, family, &mut t)?;

    let mut pb = FinCategoryBuilder::new();
    for k in 0..family.len() {
        pb.object(&format!("g{k:04}"));
    }
    let pshape = Arc::new(pb.build()?);
    let pd = FunctorData::new(cat, pshape, family.to_vec(), family.iter().map(|g| cat.identity(g)).collect())?;
    let product = limit(cat, &pd)?;
    t.extend(cat.verify_limit(&pd, &product.cone));
    let p = product.vertex().clone();

    let b = ExpOfEndofunctor(f.clone());
    let objs = cat.objects();
    let mut spans = BTreeMap::new();
    for x in &objs {
        let span = span_limit(cat, &b, &p, x)?;
        t.extend(cat.verify_limit(&span.limit.diagram, &span.limit.cone));
        mono_certificate(cat, &b, &span, &mut t)?;
        spans.insert(x.clone(), span);
    }

    // One node per object for M_X, plus the common target P^{F(P)}.
    let ids: Vec<String> = (0..objs.len()).map(node_id).collect();
    let mut node_ids = ids.clone();
    node_ids.push("target".into());
    let mut leq = Vec::new();
    for (k, x) in objs.iter().enumerate() {
        leq.push((ids[k].clone(), "target".to_string()));
        for (l, y) in objs.iter().enumerate() {
            if k != l && subobject_iso(cat, spans[x].m(), spans[y].m()).is_some() {
                leq.push((ids[k].clone(), ids[l].clone()));
            }
        }
    }
    let mshape = Arc::new(FinCategory::from_preorder(&node_ids, &leq)?);
    let target = mshape.object("target").expect("target node");
    let node_of = |o: ObjIx| -> Option<&A::Obj> {
        (o != target).then(|| &objs[ids.iter().position(|i| i == mshape.object_id(o)).expect("node")])
    };
    let top = b.on_objects(cat, &p, &p)?;
    let mobjects: Vec<A::Obj> = mshape
        .object_ixs()
        .map(|o| node_of(o).map_or(top.clone(), |x| spans[x].vertex().clone()))
        .collect();
    let marrows = mshape
        .arrow_ixs()
        .map(|a| {
            let (s, e) = (mshape.src(&a), mshape.tgt(&a));
            match (node_of(s), node_of(e)) {
                _ if s == e => Ok(cat.identity(&mobjects[s.0])),
                (Some(x), None) => Ok(spans[x].m().clone()),
                (Some(x), Some(y)) => subobject_iso(cat, spans[x].m(), spans[y].m())
                    .ok_or_else(|| Error::MonoCertificateFailure("isomorphism between subobjects vanished".into())),
                (None, _) => Err(Error::mismatch("arrow out of the target node")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let m_diagram = FunctorData::new(cat, mshape.clone(), mobjects, marrows)?;
    let (skeleton, equivalence) = skeletonize(cat, &m_diagram)?;
    t.record("lemma2.small-diagram", src, skeleton.shape().num_objects() <= m_diagram.shape().num_objects(), || {
        "skeleton is larger than the diagram".into()
    });
    let small = limit(cat, &skeleton)?;
    let (lim, tt) = transport_limit(cat, &equivalence, &small)?;
    t.extend(tt);

    let node_ix = |x: &A::Obj| mshape.object(&ids[objs.iter().position(|o| o == x).expect("object")]).expect("node");
    let zeta: BTreeMap<A::Obj, A::Arr> =
        objs.iter().map(|x| (x.clone(), lim.edges()[node_ix(x).0].clone())).collect();
    let projections = objs
        .iter()
        .map(|x| Ok((x.clone(), cat.compose(spans[x].n(), &zeta[x])?)))
        .collect::<Result<BTreeMap<_, _>>>()?;

    let sub: Subdivision<A> = subdivision(cat, &b)?;
    check_wedge(cat, &b, &projections, "lemma2.wedge", &mut t).map_err(|e| match e {
        Error::NotAWedge(w) => Error::WedgeFailure(w),
        other => other,
    })?;
    for arr in cat.arrows() {
        let (x, y) = (cat.src(&arr), cat.tgt(&arr));
        let left = cat.compose(&b.on_left(cat, &arr, &y)?, &projections[&y])?;
        let right = cat.compose(&b.on_right(cat, &x, &arr)?, &projections[&x])?;
        for phi in &spans[&y].phis {
            let sep = b.on_right(cat, &x, phi)?;
            t.equal("lemma2.hexagon-separated", src, &cat.compose(&sep, &left)?, &cat.compose(&sep, &right)?, || {
                format!("f = {}, φ = {}", cat.arr_label(&arr), cat.arr_label(phi))
            });
        }
    }
    let gamma = lim.vertex().clone();
    let end_cone = wedge_cone(cat, &b, &sub, &gamma, &projections)?;
    let diagram = sub.diagram.clone();
    let end = EndCone::new(sub, LimitingConeData { diagram, cone: end_cone });
    let ctx = Construction { b: &b, p: &p, spans: &spans, lim: &lim, zeta: &zeta, node_ix: &node_ix };
    replay_terminality(cat, &ctx, &end, &mut t)?;
    Ok(Lemma2Result {
        family: family.to_vec(),
        product,
        spans,
        m_diagram,
        skeleton,
        equivalence,
        limit: lim,
        zeta,
        projections,
        end,
        transcript: t,
    })
}

struct Construction<'a, A: Category, N: Fn(&A::Obj) -> ObjIx> {
    b: &'a ExpOfEndofunctor<A::Obj, A::Arr>,
    p: &'a A::Obj,
    spans: &'a BTreeMap<A::Obj, SpanLimit<A>>,
    lim: &'a LimitingCone<A>,
    zeta: &'a BTreeMap<A::Obj, A::Arr>,
    node_ix: &'a N,
}

/// For every wedge `ξ` with vertex `U`: lifts each `ξ_Y` to `θ_Y: U → M_Y`,
/// checks the `θ` are compatible with every `r_{X,Y}`, factors them through
/// `ζ` as `h`, and confirms `h` is the only arrow with `π_Y ∘ h = ξ_Y`.
fn replay_terminality<A, N>(cat: &A, c: &Construction<'_, A, N>, end: &EndCone<A>, t: &mut Transcript) -> Result<()>
where
    A: Enumerable + Limits,
    ExpOfEndofunctor<A::Obj, A::Arr>: Bifunctor<A>,
    N: Fn(&A::Obj) -> ObjIx,
{
    let src = source::END_EXISTENCE;
    let sub = &end.subdivision;
    let md = &c.lim.diagram;
    for wedge in all_cones(cat, &sub.diagram)? {
        let u = wedge.vertex.clone();
        let xi: BTreeMap<A::Obj, A::Arr> =
            sub.object_nodes.iter().map(|(x, n)| (x.clone(), wedge.edges[n.0].clone())).collect();
        let xi_p = &xi[c.p];
        let mut theta_edges = vec![xi_p.clone(); md.shape().num_objects()];
        let mut theta = BTreeMap::new();
        for (y, span) in c.spans {
            let cone = span.cone_from(cat, c.b, xi_p, &xi[y])?;
            let th = mediator(cat, &span.limit, &cone)?;
            let ctx = || format!("U = {}, Y = {}", cat.obj_label(&u), cat.obj_label(y));
            t.equal("lemma2.lifting-top", src, &cat.compose(span.m(), &th)?, xi_p, ctx);
            t.equal("lemma2.lifting-bottom", src, &cat.compose(span.n(), &th)?, &xi[y], ctx);
            theta_edges[(c.node_ix)(y).0] = th.clone();
            theta.insert(y.clone(), th);
        }
        let shape = md.shape();
        for a in shape.arrow_ixs() {
            let (s, e) = (shape.src(&a), shape.tgt(&a));
            t.equal("lemma2.theta-compatible", src, &cat.compose(md.arrow(a), &theta_edges[s.0])?, &theta_edges[e.0], || {
                format!("U = {}, arrow {}", cat.obj_label(&u), shape.arrow_id(a))
            });
        }
        let h = mediator(cat, c.lim, &ConeData { vertex: u.clone(), edges: theta_edges })?;
        for (y, x) in &xi {
            let pi = end.projection(y)?;
            t.equal("lemma2.h-factors", src, &cat.compose(pi, &h)?, x, || {
                format!("U = {}, Y = {}", cat.obj_label(&u), cat.obj_label(y))
            });
        }
        for k in cat.hom(&u, end.vertex()) {
            let factors = xi
                .iter()
                .all(|(y, x)| end.projection(y).ok().and_then(|pi| cat.compose(pi, &k).ok()).as_ref() == Some(x));
            if !factors {
                continue;
            }
            let through_zeta = theta.iter().all(|(y, th)| cat.compose(&c.zeta[y], &k).ok().as_ref() == Some(th));
            t.record("lemma2.zeta-determined", src, through_zeta, || format!("k = {}", cat.arr_label(&k)));
            t.equal("lemma2.h-unique", src, &k, &h, || format!("U = {}", cat.obj_label(&u)));
        }
    }
    Ok(())
}
