//! Colimits synthesized from ends: the cocone with vertex
//! `Γ = ∫_X X^{Lim X^d}` is weakly initial, and refining it inside the
//! category of cocones gives the colimit.

mod gamma;
mod lemma2;

pub use gamma::{
    exp_lim_bifunctor, gamma, gamma_from_end, lim_endofunctor, lim_exp, lim_of_arrow, mediate_weakly, ExpLim,
    GammaResult, LimExp,
};
pub use lemma2::{end_via_lemma2, verify_cogenerating, Lemma2Result, SpanLimit};

use std::collections::HashMap;

use crate::category::{Category, Enumerable, Opposite};
use crate::ends::end_of;
use crate::error::{Error, Result};
use crate::fincat::{ArrIx, FinCategory, FinCategoryBuilder, ObjIx};
use crate::limits::{all_cones, colimit_brute, freyd_refine, initial_object_brute, Cocone, FreydOutcome, Limits};
use crate::smcc::Smcc;
use crate::transcript::{source, Transcript};
use crate::Diagram;

/// Which cogenerating family the end construction through a cogenerator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CogeneratorChoice {
    /// No objects at all. Cogenerating exactly when the ambient is thin.
    Empty,
    /// Every object.
    #[default]
    Full,
}

impl CogeneratorChoice {
    pub fn family<A: Enumerable>(self, cat: &A) -> Vec<A::Obj> {
        match self {
            CogeneratorChoice::Empty => Vec::new(),
            CogeneratorChoice::Full => cat.objects(),
        }
    }
}

/// How `Γ` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndRoute {
    /// As the limit of the subdivision diagram over every object.
    #[default]
    Direct,
    /// Through subobjects of `P^{F(P)}` for a cogenerator `P`.
    Cogenerator(CogeneratorChoice),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ColimitOptions {
    pub route: EndRoute,
    /// Compares with the brute-force colimit and initial object, and with the other end route.
    pub cross_check: bool,
}

/// The category of cocones over a diagram, with cocone morphisms as arrows.
#[derive(Debug, Clone)]
pub struct CoconeCategory<A: Category> {
    pub category: FinCategory,
    /// Indexed by [`ObjIx`] of `category`.
    pub cocones: Vec<Cocone<A>>,
    /// The ambient arrow underlying each [`ArrIx`] of `category`.
    pub morphisms: Vec<A::Arr>,
}

impl<A: Category> CoconeCategory<A> {
    pub fn find(&self, c: &Cocone<A>) -> Option<ObjIx> {
        self.cocones.iter().position(|x| x == c).map(ObjIx)
    }

    /// The arrow of `category` over `u: src → tgt`, if `u` is a cocone morphism.
    pub fn arrow_over(&self, src: ObjIx, tgt: ObjIx, u: &A::Arr) -> Option<ArrIx> {
        self.category
            .hom(&src, &tgt)
            .into_iter()
            .find(|a| &self.morphisms[a.0] == u)
    }
}

fn cocone_id(k: usize) -> String {
    format!("cocone{k:04}")
}

/// Enumerates every cocone over `d` and every cocone morphism between them.
pub fn cocone_category<A: Enumerable>(cat: &A, d: &Diagram<A>) -> Result<CoconeCategory<A>> {
    let cocones = all_cones(&Opposite(cat), &d.opposite())?;
    let is_morphism = |a: &Cocone<A>, b: &Cocone<A>, u: &A::Arr| {
        a.edges.iter().zip(&b.edges).all(|(x, y)| cat.compose(u, x).ok().as_ref() == Some(y))
    };
    let mut b = FinCategoryBuilder::new();
    for k in 0..cocones.len() {
        b.object(&cocone_id(k));
    }
    // (source, target, ambient arrow) -> arrow id
    let mut ids: HashMap<(usize, usize, A::Arr), String> = HashMap::new();
    let mut listed: Vec<(usize, usize, A::Arr)> = Vec::new();
    for (s, cs) in cocones.iter().enumerate() {
        for (e, ce) in cocones.iter().enumerate() {
            for u in cat.hom(&cs.vertex, &ce.vertex) {
                if !is_morphism(cs, ce, &u) {
                    continue;
                }
                let id = if s == e && cat.is_identity(&u) {
                    format!("id:{}", cocone_id(s))
                } else {
                    let id = format!("mor{:05}", listed.len());
                    b.arrow(&id, &cocone_id(s), &cocone_id(e));
                    id
                };
                ids.insert((s, e, u.clone()), id);
                listed.push((s, e, u));
            }
        }
    }
    for (s, m, f) in &listed {
        for (m2, e, g) in &listed {
            if m != m2 || (cat.is_identity(f) && s == m) || (cat.is_identity(g) && m2 == e) {
                continue;
            }
            let gf = cat.compose(g, f)?;
            let r = ids
                .get(&(*s, *e, gf))
                .ok_or_else(|| Error::CoconeFailure("cocone morphisms are not closed under composition".into()))?;
            b.composite(&ids[&(*m2, *e, g.clone())], &ids[&(*s, *m, f.clone())], r);
        }
    }
    let category = b.build()?;
    let mut morphisms = vec![None; category.num_arrows()];
    for ((_, _, u), id) in ids {
        morphisms[category.arrow(&id).expect("arrow was added").0] = Some(u);
    }
    let morphisms = morphisms.into_iter().map(|m| m.expect("every arrow has an ambient arrow")).collect();
    Ok(CoconeCategory { category, cocones, morphisms })
}

#[derive(Debug, Clone)]
pub struct ColimitViaEnds<A: Category> {
    pub colimit: Cocone<A>,
    pub gamma: GammaResult<A>,
    pub lemma2: Option<Lemma2Result<A>>,
    pub cocones: CoconeCategory<A>,
    /// The `Γ` cocone inside `cocones`.
    pub weakly_initial: ObjIx,
    pub freyd: FreydOutcome<ObjIx, ArrIx>,
    pub transcript: Transcript,
}

/// The colimit of `d`: `Γ` is shown weakly initial among all cocones, then
/// refined to the initial cocone.
pub fn colimit_via_ends<A: Smcc + Enumerable + Limits>(
    cat: &A,
    d: &Diagram<A>,
    opts: &ColimitOptions,
) -> Result<ColimitViaEnds<A>> {
    let src = source::COLIMIT_SYNTHESIS;
    let (b, lims, mut t) = exp_lim_bifunctor(cat, d)?;
    let (gamma, lemma2) = match opts.route {
        EndRoute::Direct => {
            let (end, te) = end_of(cat, &b)?;
            t.extend(te);
            (gamma_from_end(cat, d, lims, b, end, t)?, None)
        }
        EndRoute::Cogenerator(choice) => {
            let l2 = end_via_lemma2(cat, &b.0, &choice.family(cat))?;
            t.extend(l2.transcript.clone());
            (gamma_from_end(cat, d, lims, b, l2.end.clone(), t)?, Some(l2))
        }
    };
    let mut t = gamma.transcript.clone();

    let cocones = cocone_category(cat, d)?;
    let w = cocones
        .find(&gamma.cocone())
        .ok_or_else(|| Error::CoconeFailure("Γ is missing from the enumerated cocones".into()))?;
    for (k, delta) in cocones.cocones.iter().enumerate() {
        let (psi, tm) = mediate_weakly(cat, &gamma, delta)?;
        t.extend(tm);
        let ok = t.record("colimit.weakly-initial", src, cocones.arrow_over(w, ObjIx(k), &psi).is_some(), || {
            format!("ψ into {} is not a cocone morphism", cocone_id(k))
        });
        if !ok {
            return Err(Error::NotWeaklyInitial(cocone_id(k)));
        }
    }

    let freyd = freyd_refine(&cocones.category, &w)?;
    t.extend(freyd.transcript.clone());
    let cc = &cocones.category;
    let back = cc.compose(&freyd.retraction, &freyd.to_weak)?;
    t.record("colimit.retraction", source::INITIAL_OBJECT, cc.is_identity(&back), || {
        format!("retraction composite is {}", cc.arrow_id(back))
    });
    let colimit = cocones.cocones[freyd.initial.0].clone();

    if opts.cross_check {
        let brute = colimit_brute(cat, d)?;
        t.equal("colimit.agrees-with-brute", src, &colimit, &brute, || "colimit".into());
        let initial = initial_object_brute(cc)?;
        t.equal("colimit.freyd-agrees-with-brute", source::INITIAL_OBJECT, &freyd.initial, &initial, || {
            "initial cocone".into()
        });
        t.extend(crate::limits::verify_colimit_exhaustive(cat, d, &colimit));
        let other = match opts.route {
            EndRoute::Direct => {
                end_via_lemma2(cat, &gamma.bifunctor.0, &CogeneratorChoice::Full.family(cat))?.end.vertex().clone()
            }
            EndRoute::Cogenerator(_) => end_of(cat, &gamma.bifunctor)?.0.vertex().clone(),
        };
        t.equal("colimit.end-routes-agree", source::END_EXISTENCE, gamma.vertex(), &other, || {
            "end vertex".into()
        });
    }

    Ok(ColimitViaEnds { colimit, gamma, lemma2, cocones, weakly_initial: w, freyd, transcript: t })
}

#[cfg(test)]
mod tests;
