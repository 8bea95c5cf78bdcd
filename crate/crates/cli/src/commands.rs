use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use catend::cocompletion::{
    colimit_via_ends, end_via_lemma2, exp_lim_bifunctor, CogeneratorChoice, ColimitOptions, EndRoute,
};
use catend::ends::{end_of, verify_bifunctor, Endofunctor, ExpOfEndofunctor};
use catend::instances::{FinSetWorkspace, Function, Quantale, SizeCaps, Value};
use catend::limits::{colimit_brute, is_limiting_cone, limit, limit_brute, verify_colimit_exhaustive, verify_exhaustive};
use catend::smcc::{law_suite, LawSuiteOptions};
use catend::transcript::source;
use catend::{Category, CategoryViolation, ConeData, Diagram, Enumerable, Error, FinCategory, FunctorData, Limits};

use crate::document::{self, ArrowImage, Document, Loaded, RawDiagram, RawEndofunctor};
use crate::report::{InstanceSummary, Report};
use crate::{BifunctorKind, ColimitVia, Command, InputError, LimitVia, Route};

type Res<T> = Result<T, InputError>;

fn input(context: &Path) -> impl Fn(Error) -> InputError + '_ {
    move |e| InputError(format!("{}: {e}", context.display()))
}

fn caps() -> Res<SizeCaps> {
    SizeCaps::from_env().map_err(|e| InputError(format!("{}: {e}", SizeCaps::ENV_VAR)))
}

enum Instance {
    Quantale(Quantale),
    FinSet(FinSetWorkspace),
    FinCat(FinCategory),
}

impl Instance {
    fn summary(&self, path: &Path) -> InstanceSummary {
        let path = path.display().to_string();
        match self {
            Instance::Quantale(q) => InstanceSummary {
                kind: "quantale".into(),
                path,
                objects: q.len(),
                arrows: Some(q.arrows().len()),
            },
            Instance::FinSet(w) => {
                InstanceSummary { kind: "finset".into(), path, objects: w.named_sets().count(), arrows: None }
            }
            Instance::FinCat(c) => InstanceSummary {
                kind: "fincat".into(),
                path,
                objects: c.num_objects(),
                arrows: Some(c.num_arrows()),
            },
        }
    }
}

fn load_instance(path: &Path, allowed: &[&str]) -> Res<Instance> {
    let l = document::load(path)?;
    let err = input(path);
    let inst = match document::expect_kind(&l, allowed)? {
        Document::Quantale(raw) => Instance::Quantale(document::quantale(raw, &caps()?).map_err(err)?),
        Document::Finset(raw) => Instance::FinSet(document::finset(raw, caps()?).map_err(err)?),
        Document::Fincat(raw) => Instance::FinCat(document::fincat(raw).map_err(err)?),
        _ => unreachable!("expect_kind filters kinds"),
    };
    Ok(inst)
}

fn load_diagram(path: &Path) -> Res<(Loaded, RawDiagram)> {
    let l = document::load(path)?;
    let Document::Diagram(d) = document::expect_kind(&l, &["diagram"])?.clone() else {
        unreachable!("expect_kind filters kinds")
    };
    Ok((l, d))
}

/// Checks that the diagram maps exactly the shape's objects and only its arrows.
fn check_keys(shape: &FinCategory, d: &RawDiagram) -> Res<()> {
    for id in shape.object_ids() {
        if !d.objects.contains_key(id) {
            return Err(InputError(format!("shape object `{id}` is unmapped")));
        }
    }
    if let Some(k) = d.objects.keys().find(|k| shape.object(k).is_none()) {
        return Err(InputError(format!("`{k}` is not an object of the shape")));
    }
    if let Some(k) = d.arrows.keys().find(|k| shape.arrow(k).is_none()) {
        return Err(InputError(format!("`{k}` is not an arrow of the shape")));
    }
    Ok(())
}

fn build<A: Category>(
    cat: &A,
    shape: Arc<FinCategory>,
    d: &RawDiagram,
    object: impl Fn(&str) -> Res<A::Obj>,
    arrow: impl Fn(&str, &A::Obj, &A::Obj, Option<&ArrowImage>) -> Res<A::Arr>,
) -> Res<Diagram<A>> {
    check_keys(&shape, d)?;
    let objects = shape
        .object_ids()
        .iter()
        .map(|id| object(&d.objects[id]).map_err(|e| InputError(format!("shape object `{id}`: {e}"))))
        .collect::<Res<Vec<_>>>()?;
    let arrows = shape
        .arrow_ixs()
        .map(|a| {
            let id = shape.arrow_id(a);
            let (s, t) = (&objects[shape.src(&a).0], &objects[shape.tgt(&a).0]);
            match d.arrows.get(id) {
                None if shape.is_identity(&a) => Ok(cat.identity(s)),
                img => arrow(id, s, t, img).map_err(|e| InputError(format!("shape arrow `{id}`: {e}"))),
            }
        })
        .collect::<Res<Vec<_>>>()?;
    FunctorData::new(cat, shape, objects, arrows).map_err(|e| InputError(e.to_string()))
}

fn quantale_diagram(q: &Quantale, l: &Loaded, d: &RawDiagram) -> Res<Diagram<Quantale>> {
    let shape = document::shape(l, d)?;
    build(
        q,
        shape,
        d,
        |name| q.element(name).ok_or_else(|| InputError(format!("`{name}` is not an element"))),
        |_, s, t, img| {
            let le = q.le(*s, *t).map_err(|e| InputError(e.to_string()))?;
            match img {
                None => Ok(le),
                Some(ArrowImage::Id(label)) if *label == q.arr_label(&le) => Ok(le),
                Some(_) => Err(InputError(format!("the only arrow available is `{}`", q.arr_label(&le)))),
            }
        },
    )
    .map_err(|e| InputError(format!("{}: {e}", l.path.display())))
}

fn fincat_diagram(c: &FinCategory, l: &Loaded, d: &RawDiagram) -> Res<Diagram<FinCategory>> {
    let shape = document::shape(l, d)?;
    build(
        c,
        shape,
        d,
        |id| c.object(id).ok_or_else(|| InputError(format!("`{id}` is not an object"))),
        |_, _, _, img| match img {
            Some(ArrowImage::Id(id)) => c.arrow(id).ok_or_else(|| InputError(format!("`{id}` is not an arrow"))),
            Some(ArrowImage::Table(_)) => Err(InputError("expected an arrow id".into())),
            None => Err(InputError("unmapped".into())),
        },
    )
    .map_err(|e| InputError(format!("{}: {e}", l.path.display())))
}

fn finset_diagram(w: &FinSetWorkspace, l: &Loaded, d: &RawDiagram) -> Res<Diagram<FinSetWorkspace>> {
    let shape = document::shape(l, d)?;
    build(
        w,
        shape,
        d,
        |name| w.set(name).ok_or_else(|| InputError(format!("`{name}` is not a named set"))),
        |_, s, t, img| {
            let Some(ArrowImage::Table(map)) = img else {
                return Err(InputError("expected a table from domain to codomain elements".into()));
            };
            let atom = |v: &Value| v.to_string();
            if let Some(k) = map.keys().find(|k| s.index_of(&Value::Atom((*k).clone())).is_none()) {
                return Err(InputError(format!("`{k}` is not in the domain")));
            }
            let table = s
                .elements()
                .iter()
                .map(|x| {
                    let y = map.get(&atom(x)).ok_or_else(|| InputError(format!("no value for `{x}`")))?;
                    t.index_of(&Value::Atom(y.clone()))
                        .ok_or_else(|| InputError(format!("`{y}` is not in the codomain")))
                })
                .collect::<Res<Vec<_>>>()?;
            Function::new(s.clone(), t.clone(), table).map_err(|e| InputError(e.to_string()))
        },
    )
    .map_err(|e| InputError(format!("{}: {e}", l.path.display())))
}

fn endofunctor(q: &Quantale, path: &Path, raw: &RawEndofunctor) -> Res<Endofunctor<catend::instances::El, catend::instances::Le>> {
    let fail = |m: String| InputError(format!("{}: {m}", path.display()));
    let mut map = BTreeMap::new();
    for x in q.elements() {
        let y = raw.objects.get(q.name(x)).ok_or_else(|| fail(format!("no image for `{}`", q.name(x))))?;
        map.insert(x, q.element(y).ok_or_else(|| fail(format!("`{y}` is not an element")))?);
    }
    if let Some(k) = raw.objects.keys().find(|k| q.element(k).is_none()) {
        return Err(fail(format!("`{k}` is not an element")));
    }
    Endofunctor::thin(q, &raw.name, |x| map[x]).map_err(|e| fail(e.to_string()))
}

fn cone_output<A: Category>(r: &mut Report, cat: &A, d: &Diagram<A>, c: &ConeData<A::Obj, A::Arr>) {
    r.out("vertex", cat.obj_label(&c.vertex));
    for (i, e) in d.shape().object_ixs().zip(&c.edges) {
        r.out(&format!("edge {}", d.shape().object_id(i)), cat.arr_label(e));
    }
}

fn limit_report<A: Limits>(r: &mut Report, cat: &A, d: &Diagram<A>) {
    match limit(cat, d) {
        Ok(l) => {
            cone_output(r, cat, d, &l.cone);
            r.transcript(&is_limiting_cone(cat, d, &l.cone));
        }
        Err(e) => r.error("limit.exists", source::LIMITS, &e),
    }
}

fn brute_limit_report<A: Enumerable>(r: &mut Report, cat: &A, d: &Diagram<A>) {
    match limit_brute(cat, d) {
        Ok(c) => {
            cone_output(r, cat, d, &c);
            r.transcript(&verify_exhaustive(cat, d, &c));
        }
        Err(e) => r.error("limit.exists", source::LIMITS, &e),
    }
}

fn brute_colimit_report<A: Enumerable>(r: &mut Report, cat: &A, d: &Diagram<A>) {
    match colimit_brute(cat, d) {
        Ok(c) => {
            cone_output(r, cat, d, &c);
            r.transcript(&verify_colimit_exhaustive(cat, d, &c));
        }
        Err(e) => r.error("colimit.exists", source::LIMITS, &e),
    }
}

fn end_route(route: Route) -> EndRoute {
    match route {
        Route::Direct => EndRoute::Direct,
        Route::CogeneratorEmpty => EndRoute::Cogenerator(CogeneratorChoice::Empty),
        Route::CogeneratorFull => EndRoute::Cogenerator(CogeneratorChoice::Full),
    }
}

fn quantale_only(path: &Path) -> Res<Quantale> {
    match load_instance(path, &["quantale"])? {
        Instance::Quantale(q) => Ok(q),
        _ => unreachable!("only quantales are loaded"),
    }
}

pub fn run(cmd: &Command, r: &mut Report) -> Res<()> {
    match cmd {
        Command::Validate { path, instance } => validate(r, path, instance.as_deref()),
        Command::Laws { instance, samples, seed, extended } => {
            let inst = load_instance(instance, &["quantale", "finset"])?;
            r.instance = Some(inst.summary(instance));
            let opts = LawSuiteOptions { samples: *samples, seed: *seed, extended: *extended };
            let t = match &inst {
                Instance::Quantale(q) => law_suite(q, &opts),
                Instance::FinSet(w) => law_suite(w, &opts),
                Instance::FinCat(_) => unreachable!("finite categories are not loaded here"),
            };
            r.out("laws", t.checks.len().to_string());
            r.out("cases", t.total_cases().to_string());
            r.transcript(&t);
            Ok(())
        }
        Command::Limit { instance, diagram, via } => {
            let inst = load_instance(instance, &["quantale", "finset", "fincat"])?;
            r.instance = Some(inst.summary(instance));
            let (l, d) = load_diagram(diagram)?;
            match (&inst, via) {
                (Instance::Quantale(q), LimitVia::Construction) => limit_report(r, q, &quantale_diagram(q, &l, &d)?),
                (Instance::Quantale(q), LimitVia::Brute) => brute_limit_report(r, q, &quantale_diagram(q, &l, &d)?),
                (Instance::FinCat(c), LimitVia::Construction) => limit_report(r, c, &fincat_diagram(c, &l, &d)?),
                (Instance::FinCat(c), LimitVia::Brute) => brute_limit_report(r, c, &fincat_diagram(c, &l, &d)?),
                (Instance::FinSet(w), LimitVia::Construction) => limit_report(r, w, &finset_diagram(w, &l, &d)?),
                (Instance::FinSet(_), LimitVia::Brute) => {
                    return Err(InputError("--via brute needs an instance that enumerates its objects".into()))
                }
            }
            Ok(())
        }
        Command::Colimit { instance, diagram, via } => {
            let inst = load_instance(instance, &["quantale", "fincat"])?;
            r.instance = Some(inst.summary(instance));
            let (l, d) = load_diagram(diagram)?;
            match (&inst, via) {
                (Instance::Quantale(q), ColimitVia::Ends) => {
                    let dq = quantale_diagram(q, &l, &d)?;
                    match colimit_via_ends(q, &dq, &ColimitOptions::default()) {
                        Ok(res) => {
                            cone_output(r, q, &dq, &res.colimit);
                            r.transcript(&res.transcript);
                        }
                        Err(e) => r.error("colimit.exists", source::COLIMIT_SYNTHESIS, &e),
                    }
                }
                (Instance::Quantale(q), ColimitVia::Brute) => brute_colimit_report(r, q, &quantale_diagram(q, &l, &d)?),
                (Instance::FinCat(c), ColimitVia::Brute) => brute_colimit_report(r, c, &fincat_diagram(c, &l, &d)?),
                (Instance::FinCat(_), ColimitVia::Ends) => {
                    return Err(InputError("--via ends needs a quantale; use --via brute".into()))
                }
                (Instance::FinSet(_), _) => unreachable!("finite sets are not loaded here"),
            }
            Ok(())
        }
        Command::End { instance, bifunctor, argument, route } => {
            let q = quantale_only(instance)?;
            r.instance = Some(Instance::Quantale(q.clone()).summary(instance));
            let f = match bifunctor {
                BifunctorKind::ExpOfEndofunctor => {
                    let l = document::load(argument)?;
                    let Document::Endofunctor(raw) = document::expect_kind(&l, &["endofunctor"])? else {
                        unreachable!("expect_kind filters kinds")
                    };
                    endofunctor(&q, argument, raw)?
                }
                BifunctorKind::ExpLim => {
                    let (l, d) = load_diagram(argument)?;
                    let dq = quantale_diagram(&q, &l, &d)?;
                    match exp_lim_bifunctor(&q, &dq) {
                        Ok((b, _, t)) => {
                            r.transcript(&t);
                            b.0
                        }
                        Err(e) => {
                            r.error("lim.exists", source::LIMITS, &e);
                            return Ok(());
                        }
                    }
                }
            };
            r.out("endofunctor", f.name());
            let b = ExpOfEndofunctor(f.clone());
            r.transcript(&verify_bifunctor(&q, &b));
            let end = match end_route(*route) {
                EndRoute::Direct => end_of(&q, &b).map(|(end, t)| {
                    r.transcript(&t);
                    end
                }),
                EndRoute::Cogenerator(choice) => end_via_lemma2(&q, &f, &choice.family(&q)).map(|l2| {
                    r.transcript(&l2.transcript);
                    l2.end
                }),
            };
            match end {
                Ok(end) => {
                    r.out("vertex", q.obj_label(end.vertex()));
                    for (x, p) in end.projections() {
                        r.out(&format!("projection {}", q.name(*x)), q.arr_label(p));
                    }
                }
                Err(e) => r.error("end.exists", source::ENDS, &e),
            }
            Ok(())
        }
        Command::ColimitViaEnds { instance, diagram, cross_check, route } => {
            let q = quantale_only(instance)?;
            r.instance = Some(Instance::Quantale(q.clone()).summary(instance));
            let (l, d) = load_diagram(diagram)?;
            let dq = quantale_diagram(&q, &l, &d)?;
            let opts = ColimitOptions { route: end_route(*route), cross_check: *cross_check };
            match colimit_via_ends(&q, &dq, &opts) {
                Ok(res) => {
                    cone_output(r, &q, &dq, &res.colimit);
                    r.out("gamma", q.obj_label(res.gamma.vertex()));
                    r.out("cocones", res.cocones.cocones.len().to_string());
                    r.out("weakly initial cocone", res.cocones.category.object_id(res.weakly_initial));
                    r.out("initial cocone", res.cocones.category.object_id(res.freyd.initial));
                    r.transcript(&res.transcript);
                }
                Err(e) => r.error("colimit.exists", source::COLIMIT_SYNTHESIS, &e),
            }
            Ok(())
        }
    }
}

fn violation_law(v: &CategoryViolation) -> &'static str {
    use CategoryViolation::*;
    match v {
        DuplicateId(_) => "category.distinct-ids",
        UnknownObject { .. } => "category.arrow-endpoints",
        MissingIdentity { .. } | BadIdentity { .. } => "category.identities",
        UnknownArrow { .. } => "category.known-arrows",
        CompositionGap { .. } => "category.composition-total",
        NotComposable { .. } | CompositeEndpoints { .. } => "category.composition-typed",
        ConflictingComposite { .. } => "category.composition-functional",
        IdentityLaw { .. } => "category.identity-law",
        NonAssociative { .. } => "category.associativity",
    }
}

fn quantale_law(e: &Error) -> &'static str {
    match e {
        Error::NotALattice(_) => "quantale.lattice",
        Error::TensorNotMonotone(_) => "quantale.tensor-monotone",
        Error::NoResiduation(_) => "quantale.residuation",
        Error::WorkspaceBlowup { .. } => "quantale.size-cap",
        _ => "quantale.commutative-monoid",
    }
}

fn validate(r: &mut Report, path: &Path, instance: Option<&Path>) -> Res<()> {
    let l = document::load(path)?;
    r.out("kind", l.doc.kind());
    r.plumbing("document.parse", true, String::new);
    match &l.doc {
        Document::Fincat(raw) => match document::fincat(raw) {
            Ok(c) => {
                r.instance = Some(Instance::FinCat(c.clone()).summary(path));
                r.out("thin", c.is_thin().to_string());
                r.plumbing("category.valid", true, String::new);
            }
            Err(Error::InvalidCategory(vs)) => {
                let mut t = catend::Transcript::new();
                for v in &vs {
                    t.record(violation_law(v), source::PLUMBING, false, || v.to_string());
                }
                r.transcript(&t);
            }
            Err(e) => r.plumbing("category.valid", false, || e.to_string()),
        },
        Document::Quantale(raw) => match document::quantale(raw, &caps()?) {
            Ok(q) => {
                r.instance = Some(Instance::Quantale(q.clone()).summary(path));
                r.out("bottom", q.name(q.bottom()));
                r.out("top", q.name(q.top()));
                r.out("unit", q.name(q.unit_el()));
                r.out("heyting", q.is_heyting().to_string());
                for x in q.elements() {
                    let row: Vec<String> =
                        q.elements().iter().map(|&z| format!("{}={}", q.name(z), q.name(q.residual(x, z)))).collect();
                    r.out(&format!("residual {}", q.name(x)), row.join(", "));
                }
                r.check("quantale.valid", source::MONOIDAL_CLOSED, true, String::new);
            }
            Err(e) => r.check(quantale_law(&e), source::MONOIDAL_CLOSED, false, || e.to_string()),
        },
        Document::Finset(raw) => match document::finset(raw, caps()?) {
            Ok(w) => {
                for (name, s) in w.named_sets() {
                    r.out(&format!("set {name}"), s.len().to_string());
                }
                r.instance = Some(Instance::FinSet(w).summary(path));
                r.plumbing("finset.valid", true, String::new);
            }
            Err(e) => r.plumbing("finset.valid", false, || e.to_string()),
        },
        Document::Diagram(d) => {
            let shape = match document::shape(&l, d) {
                Ok(s) => s,
                Err(e) => {
                    r.plumbing("diagram.shape", false, || e.0);
                    return Ok(());
                }
            };
            r.plumbing("diagram.shape", true, String::new);
            r.out("shape objects", shape.num_objects().to_string());
            r.out("shape arrows", shape.num_arrows().to_string());
            if let Some(ip) = instance {
                let inst = load_instance(ip, &["quantale", "finset", "fincat"])?;
                r.instance = Some(inst.summary(ip));
                let built = match &inst {
                    Instance::Quantale(q) => quantale_diagram(q, &l, d).map(drop),
                    Instance::FinCat(c) => fincat_diagram(c, &l, d).map(drop),
                    Instance::FinSet(w) => finset_diagram(w, &l, d).map(drop),
                };
                r.plumbing("diagram.functor", built.is_ok(), || built.unwrap_err().0);
            }
        }
        Document::Endofunctor(raw) => {
            if let Some(ip) = instance {
                let q = quantale_only(ip)?;
                r.instance = Some(Instance::Quantale(q.clone()).summary(ip));
                let built = endofunctor(&q, path, raw);
                r.check("endofunctor.functor", source::ENDS, built.is_ok(), || built.unwrap_err().0);
            }
        }
    }
    Ok(())
}
