//! The cocone with vertex `Γ = ∫_X X^{Lim X^d}` and its weak universal property.

use std::collections::BTreeMap;

use crate::category::{Category, Enumerable};
use crate::diagram::Diagram;
use crate::ends::{end_of, verify_bifunctor, wedge_mediator, EndCone, Endofunctor, ExpOfEndofunctor};
use crate::error::{Error, Result};
use crate::fincat::ObjIx;
use crate::limits::{check_cocone, limit, mediator, Cocone, ConeData, LimitingCone, Limits};
use crate::smcc::{cocone_element, ev_at, exp_co, exp_contra, exp_diagram, swap, Smcc};
use crate::transcript::{source, Transcript};

/// `Lim X^d` for every ambient object `X`.
pub type LimExp<A> = BTreeMap<<A as Category>::Obj, LimitingCone<A>>;

/// The bifunctor `(X, Y) ↦ Y^{Lim X^d}`.
pub type ExpLim<A> = ExpOfEndofunctor<<A as Category>::Obj, <A as Category>::Arr>;

pub fn lim_exp<A: Smcc + Enumerable + Limits>(cat: &A, d: &Diagram<A>) -> Result<LimExp<A>> {
    cat.objects()
        .into_iter()
        .map(|x| {
            let l = limit(cat, &exp_diagram(cat, &x, d)?)?;
            Ok((x, l))
        })
        .collect()
}

/// `Lim f^d: Lim X^d → Lim Y^d`, the mediator of `f^{d(i)} ∘ π_{i,X}`.
pub fn lim_of_arrow<A: Smcc + Limits>(
    cat: &A,
    d: &Diagram<A>,
    lims: &LimExp<A>,
    f: &A::Arr,
) -> Result<A::Arr> {
    let get = |o: &A::Obj| {
        lims.get(o)
            .ok_or_else(|| Error::MissingLimit(cat.obj_label(o), "Lim X^d".into()))
    };
    let (lx, ly) = (get(&cat.src(f))?, get(&cat.tgt(f))?);
    let cone = ConeData {
        vertex: lx.vertex().clone(),
        edges: d
            .objects()
            .iter()
            .zip(lx.edges())
            .map(|(di, pi)| cat.compose(&exp_co(cat, f, di)?, pi))
            .collect::<Result<Vec<_>>>()?,
    };
    mediator(cat, ly, &cone)
}

/// `X ↦ Lim X^d` as an endofunctor; the functor laws are checked while tabulating.
pub fn lim_endofunctor<A: Smcc + Enumerable + Limits>(
    cat: &A,
    d: &Diagram<A>,
    lims: &LimExp<A>,
) -> Result<Endofunctor<A::Obj, A::Arr>> {
    Endofunctor::tabulate(
        cat,
        "Lim X^d",
        |x| Ok(lims[x].vertex().clone()),
        |f| lim_of_arrow(cat, d, lims, f),
    )
}

/// `B(X,Y) = Y^{Lim X^d}` with its bifunctor laws checked over every object and arrow.
pub fn exp_lim_bifunctor<A: Smcc + Enumerable + Limits>(
    cat: &A,
    d: &Diagram<A>,
) -> Result<(ExpLim<A>, LimExp<A>, Transcript)> {
    let lims = lim_exp(cat, d)?;
    let b = ExpOfEndofunctor(lim_endofunctor(cat, d, &lims)?);
    let t = verify_bifunctor(cat, &b);
    Ok((b, lims, t))
}

#[derive(Debug, Clone)]
pub struct GammaResult<A: Category> {
    pub diagram: Diagram<A>,
    pub lims: LimExp<A>,
    pub bifunctor: ExpLim<A>,
    pub end: EndCone<A>,
    /// `γ_i: d(i) → Γ`.
    pub edges: Vec<A::Arr>,
    pub transcript: Transcript,
}

impl<A: Category> GammaResult<A> {
    pub fn vertex(&self) -> &A::Obj {
        self.end.vertex()
    }

    pub fn cocone(&self) -> Cocone<A> {
        ConeData { vertex: self.vertex().clone(), edges: self.edges.clone() }
    }
}

/// The cocone `γ` over `d` with vertex `∫_X X^{Lim X^d}`, computed as a direct end.
pub fn gamma<A: Smcc + Enumerable + Limits>(cat: &A, d: &Diagram<A>) -> Result<GammaResult<A>> {
    let (b, lims, mut t) = exp_lim_bifunctor(cat, d)?;
    let (end, te) = end_of(cat, &b)?;
    t.extend(te);
    gamma_from_end(cat, d, lims, b, end, t)
}

fn wedge_failure(e: Error) -> Error {
    match e {
        Error::NotAWedge(w) => Error::WedgeFailure(w),
        other => other,
    }
}

/// Builds `γ_i = ⟨swap(π_{i,X})⟩_X` into a given end of `B(X,Y) = Y^{Lim X^d}`,
/// replaying the diamond that makes each family a wedge and the triangle that
/// makes `γ` a cocone.
pub fn gamma_from_end<A: Smcc + Enumerable + Limits>(
    cat: &A,
    d: &Diagram<A>,
    lims: LimExp<A>,
    b: ExpLim<A>,
    end: EndCone<A>,
    mut t: Transcript,
) -> Result<GammaResult<A>> {
    let src = source::COLIMIT_SYNTHESIS;
    let shape = d.shape();
    let objs = cat.objects();
    let arrows = cat.arrows();

    let mut swapped: Vec<BTreeMap<A::Obj, A::Arr>> = Vec::with_capacity(shape.num_objects());
    for i in shape.object_ixs() {
        let mut family = BTreeMap::new();
        for x in &objs {
            family.insert(x.clone(), swap(cat, &lims[x].edges()[i.0], d.object(i), x)?);
        }
        swapped.push(family);
    }

    for f in &arrows {
        let (x, y) = (cat.src(f), cat.tgt(f));
        let lim_f = b.0.arr(f)?;
        let upper_leg = exp_co(cat, f, lims[&x].vertex())?;
        let lower_leg = exp_contra(cat, &lim_f, &y)?;
        for i in shape.object_ixs() {
            let di = d.object(i);
            let mid = swap(cat, &cat.compose(&exp_co(cat, f, di)?, &lims[&x].edges()[i.0])?, di, &y)?;
            let upper = cat.compose(&upper_leg, &swapped[i.0][&x])?;
            let lower = cat.compose(&lower_leg, &swapped[i.0][&y])?;
            let ctx = || format!("f = {}, i = {}", cat.arr_label(f), shape.object_id(i));
            t.equal("gamma.diamond-upper", src, &upper, &mid, ctx);
            t.equal("gamma.diamond-lower", src, &lower, &mid, ctx);
        }
    }

    let mut edges = Vec::with_capacity(shape.num_objects());
    for family in &swapped {
        let (g, tw) = wedge_mediator(cat, &b, &end, family).map_err(wedge_failure)?;
        t.extend(tw);
        edges.push(g);
    }

    for theta in shape.arrow_ixs() {
        let (i, j) = (shape.src(&theta), shape.tgt(&theta));
        let d_theta = d.arrow(theta);
        let mut shifted = BTreeMap::new();
        for x in &objs {
            let pj = &lims[x].edges()[j.0];
            let lhs = cat.compose(&swapped[j.0][x], d_theta)?;
            let moved = swap(cat, &cat.compose(&exp_contra(cat, d_theta, x)?, pj)?, d.object(i), x)?;
            let ctx = || format!("θ = {}, X = {}", shape.arrow_id(theta), cat.obj_label(x));
            t.equal("gamma.triangle-swap", src, &lhs, &moved, ctx);
            t.equal("gamma.triangle-cone", src, &moved, &swapped[i.0][x], ctx);
            shifted.insert(x.clone(), lhs);
        }
        let composed = cat.compose(&edges[j.0], d_theta)?;
        let (tuple, _) = wedge_mediator(cat, &b, &end, &shifted).map_err(wedge_failure)?;
        t.equal("gamma.tuple-precomposition", src, &composed, &tuple, || {
            format!("θ = {}", shape.arrow_id(theta))
        });
        let ok = t.equal("gamma.cocone", src, &composed, &edges[i.0], || {
            format!("θ = {}", shape.arrow_id(theta))
        });
        if !ok {
            return Err(Error::CoconeFailure(format!(
                "γ is not a cocone at `{}`",
                shape.arrow_id(theta)
            )));
        }
    }

    let result = GammaResult { diagram: d.clone(), lims, bifunctor: b, end, edges, transcript: t };
    check_cocone(cat, d, &result.cocone()).map_err(|e| Error::CoconeFailure(e.to_string()))?;
    Ok(result)
}

/// `ψ = ev_{[δ]} ∘ π_D: Γ → D` for a cocone `δ` with vertex `D`, with
/// `ψ ∘ γ_i = δ_i` replayed for every `i`.
pub fn mediate_weakly<A: Smcc + Enumerable + Limits>(
    cat: &A,
    g: &GammaResult<A>,
    delta: &Cocone<A>,
) -> Result<(A::Arr, Transcript)> {
    let src = source::COLIMIT_SYNTHESIS;
    let d = &g.diagram;
    let x = &delta.vertex;
    let lim = g
        .lims
        .get(x)
        .ok_or_else(|| Error::MissingLimit(cat.obj_label(x), "Lim X^d".into()))?;
    let (element, mut t) = cocone_element(cat, d, delta, lim)?;
    let pi_d = g.end.projection(x)?.clone();
    let ev = ev_at(cat, &element, x)?;
    let psi = cat.compose(&ev, &pi_d)?;
    for (k, (gi, di)) in g.edges.iter().zip(&delta.edges).enumerate() {
        let i = ObjIx(k);
        let sw = swap(cat, &lim.edges()[k], d.object(i), x)?;
        let ctx = || format!("i = {}", d.shape().object_id(i));
        t.equal("mediate.end-projection", src, &cat.compose(&pi_d, gi)?, &sw, ctx);
        t.equal("mediate.evaluates", src, &cat.compose(&ev, &sw)?, di, ctx);
        if !t.equal("mediate.factors", src, &cat.compose(&psi, gi)?, di, ctx) {
            return Err(Error::MediationFailure(format!(
                "ψ ∘ γ_i differs from δ_i at `{}`",
                d.shape().object_id(i)
            )));
        }
    }
    Ok((psi, t))
}
