//! The exhaustive limit engine for categories with enumerable objects and hom-sets.

use crate::category::{Category, Enumerable};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::fincat::ObjIx;
use crate::transcript::{source, Transcript};

use super::{check_cone, Cone, ConeData};

const SEARCH_CAP: usize = 1 << 20;

/// Every cone over `d` with the given vertex, in lexicographic order of edges.
pub fn cones_with_vertex<A: Enumerable>(
    cat: &A,
    d: &Diagram<A>,
    vertex: &A::Obj,
) -> Result<Vec<Cone<A>>> {
    let shape = d.shape();
    let n = shape.num_objects();
    let candidates: Vec<Vec<A::Arr>> = shape
        .object_ixs()
        .map(|i| cat.hom(vertex, d.object(i)))
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    // Arrows are checked as soon as both of their endpoints carry an edge.
    let mut checks_at: Vec<Vec<(usize, usize, &A::Arr)>> = vec![Vec::new(); n];
    for a in shape.arrow_ixs() {
        let (i, j) = (shape.src(&a).0, shape.tgt(&a).0);
        if a == shape.identity(&ObjIx(i)) {
            continue;
        }
        checks_at[i.max(j)].push((i, j, d.arrow(a)));
    }

    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    let mut depth = 0usize;
    let mut visited = 0usize;
    if n == 0 {
        return Ok(vec![ConeData { vertex: vertex.clone(), edges: Vec::new() }]);
    }
    loop {
        if choice[depth] == candidates[depth].len() {
            if depth == 0 {
                break;
            }
            choice[depth] = 0;
            depth -= 1;
            choice[depth] += 1;
            continue;
        }
        visited += 1;
        if visited > SEARCH_CAP {
            return Err(Error::SearchBlowup(SEARCH_CAP));
        }
        let edge = |k: usize| &candidates[k][choice[k]];
        let consistent = checks_at[depth].iter().all(|&(i, j, img)| {
            cat.compose(img, edge(i)).ok().as_ref() == Some(edge(j))
        });
        if !consistent {
            choice[depth] += 1;
            continue;
        }
        if depth + 1 == n {
            out.push(ConeData {
                vertex: vertex.clone(),
                edges: (0..n).map(|k| edge(k).clone()).collect(),
            });
            choice[depth] += 1;
        } else {
            depth += 1;
        }
    }
    Ok(out)
}

/// Every cone over `d`, ordered by vertex and then by edges.
pub fn all_cones<A: Enumerable>(cat: &A, d: &Diagram<A>) -> Result<Vec<Cone<A>>> {
    let mut out = Vec::new();
    for v in cat.objects() {
        out.extend(cones_with_vertex(cat, d, &v)?);
        if out.len() > SEARCH_CAP {
            return Err(Error::SearchBlowup(SEARCH_CAP));
        }
    }
    Ok(out)
}

/// All `f: c.vertex → lim.vertex` with `lim.edges[i] ∘ f = c.edges[i]` for every `i`.
pub fn factorizations<A: Enumerable>(cat: &A, lim: &Cone<A>, c: &Cone<A>) -> Vec<A::Arr> {
    cat.hom(&c.vertex, &lim.vertex)
        .into_iter()
        .filter(|f| {
            lim.edges
                .iter()
                .zip(&c.edges)
                .all(|(p, r)| cat.compose(p, f).ok().as_ref() == Some(r))
        })
        .collect()
}

/// The first cone, in enumeration order, that is terminal among all cones over `d`.
///
/// Enumeration runs over vertices in ascending order, so when several
/// isomorphic limits exist the one with the smallest vertex is returned.
pub fn limit_brute<A: Enumerable>(cat: &A, d: &Diagram<A>) -> Result<Cone<A>> {
    let cones = all_cones(cat, d)?;
    if cones.is_empty() {
        return Err(Error::NoLimit("there is no cone over the diagram".into()));
    }
    let mut witness = None;
    for cand in &cones {
        let failing = cones
            .iter()
            .map(|c| (c, factorizations(cat, cand, c).len()))
            .find(|(_, k)| *k != 1);
        match failing {
            None => return Ok(cand.clone()),
            Some((c, k)) if witness.is_none() => {
                witness = Some(format!(
                    "cone at `{}` admits {k} factorization(s) of the cone at `{}`",
                    cat.obj_label(&cand.vertex),
                    cat.obj_label(&c.vertex)
                ));
            }
            Some(_) => {}
        }
    }
    Err(Error::NoLimit(format!(
        "none of the {} cones is terminal; {}",
        cones.len(),
        witness.unwrap_or_default()
    )))
}

pub fn factor_brute<A: Enumerable>(
    cat: &A,
    d: &Diagram<A>,
    lim: &Cone<A>,
    c: &Cone<A>,
) -> Result<A::Arr> {
    check_cone(cat, d, c)?;
    let mut fs = factorizations(cat, lim, c);
    match fs.len() {
        1 => Ok(fs.pop().expect("one factorization")),
        k => Err(Error::NotLimiting(format!(
            "the cone at `{}` has {k} factorizations through `{}`",
            cat.obj_label(&c.vertex),
            cat.obj_label(&lim.vertex)
        ))),
    }
}

/// Cone laws plus terminality against every enumerated cone.
pub fn verify_exhaustive<A: Enumerable>(cat: &A, d: &Diagram<A>, cone: &Cone<A>) -> Transcript {
    let mut t = Transcript::new();
    let laws = check_cone(cat, d, cone);
    let is_cone = laws.is_ok();
    t.record("cone.commutes", source::LIMITS, is_cone, || {
        laws.err().map(|e| e.to_string()).unwrap_or_default()
    });
    if !is_cone {
        return t;
    }
    match all_cones(cat, d) {
        Err(e) => {
            t.record("cone.terminal", source::LIMITS, false, || e.to_string());
        }
        Ok(cones) => {
            for c in &cones {
                let k = factorizations(cat, cone, c).len();
                t.record("cone.terminal", source::LIMITS, k == 1, || {
                    format!(
                        "cone at `{}` has {k} factorization(s)",
                        cat.obj_label(&c.vertex)
                    )
                });
            }
        }
    }
    t
}

/// The first object with exactly one arrow to every object.
pub fn initial_object_brute<A: Enumerable>(cat: &A) -> Result<A::Obj> {
    let objs = cat.objects();
    objs.iter()
        .find(|x| objs.iter().all(|y| cat.hom(x, y).len() == 1))
        .cloned()
        .ok_or(Error::NoInitial)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::Category;
    use crate::diagram::FunctorData;
    use crate::fincat::{FinCategory, FinCategoryBuilder};
    use crate::limits::colimit_brute;

    fn chain3() -> FinCategory {
        let objs = ["0", "a", "1"].map(String::from);
        FinCategory::from_preorder(
            &objs,
            &[("0".into(), "a".into()), ("a".into(), "1".into())],
        )
        .unwrap()
    }

    fn discrete(ids: &[&str]) -> Arc<FinCategory> {
        let mut b = FinCategoryBuilder::new();
        for i in ids {
            b.object(i);
        }
        Arc::new(b.build().unwrap())
    }

    fn thin_diagram(c: &FinCategory, shape: Arc<FinCategory>, objs: &[&str]) -> Diagram<FinCategory> {
        let objs: Vec<ObjIx> = objs.iter().map(|o| c.object(o).unwrap()).collect();
        FunctorData::from_object_map(c, shape, objs, |x, y| {
            c.hom(x, y).first().copied().ok_or_else(|| Error::mismatch("no arrow"))
        })
        .unwrap()
    }

    #[test]
    fn meet_in_chain() {
        let c = chain3();
        let d = thin_diagram(&c, discrete(&["i", "j"]), &["a", "1"]);
        let l = limit_brute(&c, &d).unwrap();
        assert_eq!(c.object_id(l.vertex), "a");
    }

    #[test]
    fn empty_limit_is_top_and_empty_colimit_is_bottom() {
        let c = chain3();
        let d = thin_diagram(&c, discrete(&[]), &[]);
        assert_eq!(c.object_id(limit_brute(&c, &d).unwrap().vertex), "1");
        assert_eq!(c.object_id(colimit_brute(&c, &d).unwrap().vertex), "0");
    }

    #[test]
    fn join_in_chain() {
        let c = chain3();
        let d = thin_diagram(&c, discrete(&["i", "j"]), &["0", "a"]);
        assert_eq!(c.object_id(colimit_brute(&c, &d).unwrap().vertex), "a");
    }

    #[test]
    fn non_meet_vertex_fails_verification() {
        let c = chain3();
        let d = thin_diagram(&c, discrete(&["i", "j"]), &["a", "1"]);
        let zero = c.object("0").unwrap();
        let cone = cones_with_vertex(&c, &d, &zero).unwrap().remove(0);
        let t = verify_exhaustive(&c, &d, &cone);
        assert!(t.get("cone.commutes").unwrap().passed());
        assert!(!t.get("cone.terminal").unwrap().passed());
    }

    #[test]
    fn discrete_two_objects_have_no_initial() {
        let c = discrete(&["x", "y"]);
        assert!(matches!(initial_object_brute(c.as_ref()), Err(Error::NoInitial)));
        let chain = chain3();
        assert_eq!(chain.object_id(initial_object_brute(&chain).unwrap()), "0");
    }

    #[test]
    fn span_with_equal_feet_has_apex_as_limit() {
        // i → k, i → l with d(k) = d(l): the limit is still d(i), not a pullback.
        let c = chain3();
        let mut s = FinCategoryBuilder::new();
        s.object("i").object("k").object("l").arrow("f", "i", "k").arrow("g", "i", "l");
        let d = thin_diagram(&c, Arc::new(s.build().unwrap()), &["0", "1", "1"]);
        let l = limit_brute(&c, &d).unwrap();
        assert_eq!(c.object_id(l.vertex), "0");
        let id = c.identity(&l.vertex);
        assert_eq!(l.edges[0], id);
    }
}
