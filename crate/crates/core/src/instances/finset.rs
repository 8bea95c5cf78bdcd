//! A workspace of finite sets and functions with its cartesian closed structure.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::limits::{check_cone, Cone, ConeData, Limits};
use crate::smcc::{LawCases, LawSource, LawSuiteOptions, Smcc};
use crate::transcript::{source, Transcript};

use super::SizeCaps;

/// Elements of sets built in the workspace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Atom(String),
    /// An element of a product, or of a limit given as a compatible family.
    Tuple(Vec<Value>),
    /// A function, listed by its values on the domain in order.
    Fun(Vec<Value>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, vs: &[Value], open: &str, close: &str| {
            write!(f, "{open}")?;
            for (i, v) in vs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "{close}")
        };
        match self {
            Value::Atom(s) => write!(f, "{s}"),
            Value::Tuple(vs) => list(f, vs, "(", ")"),
            Value::Fun(vs) => list(f, vs, "[", "]"),
        }
    }
}

/// A finite set, its elements kept sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet {
    elems: Vec<Value>,
}

pub type SetObj = Arc<FinSet>;

impl FinSet {
    pub fn new(mut elems: Vec<Value>) -> Self {
        elems.sort();
        elems.dedup();
        FinSet { elems }
    }

    pub fn atoms<S: AsRef<str>>(names: &[S]) -> Self {
        Self::new(names.iter().map(|s| Value::Atom(s.as_ref().to_string())).collect())
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Value] {
        &self.elems
    }

    pub fn index_of(&self, v: &Value) -> Option<usize> {
        self.elems.binary_search(v).ok()
    }
}

/// A function between finite sets, as the table of indices of its values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Function {
    src: SetObj,
    tgt: SetObj,
    table: Vec<usize>,
}

impl Function {
    pub fn new(src: SetObj, tgt: SetObj, table: Vec<usize>) -> Result<Self> {
        if table.len() != src.len() || table.iter().any(|&i| i >= tgt.len()) {
            return Err(Error::mismatch("function table does not fit its domain and codomain"));
        }
        Ok(Function { src, tgt, table })
    }

    /// Tabulates `f` on the domain; every value must lie in the codomain.
    pub fn from_fn(src: SetObj, tgt: SetObj, f: impl Fn(&Value) -> Value) -> Result<Self> {
        let table = src
            .elements()
            .iter()
            .map(|x| {
                let y = f(x);
                tgt.index_of(&y)
                    .ok_or_else(|| Error::mismatch(format!("value `{y}` is outside the codomain")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Function { src, tgt, table })
    }

    pub fn src(&self) -> &SetObj {
        &self.src
    }

    pub fn tgt(&self) -> &SetObj {
        &self.tgt
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: &Value) -> Option<&Value> {
        self.src.index_of(x).map(|i| &self.tgt.elements()[self.table[i]])
    }
}

/// The `finset` JSON document body: named sets of atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFinSet {
    pub sets: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Construction {
    Product(SetObj, SetObj),
    Exponential(SetObj, SetObj),
}

/// Named finite sets closed on demand under products and exponentials.
///
/// Constructed sets are memoized; lookups take a shared lock and only the
/// insertion of a new construction takes the exclusive one.
#[derive(Debug)]
pub struct FinSetWorkspace {
    named: BTreeMap<String, SetObj>,
    labels: HashMap<SetObj, String>,
    caps: SizeCaps,
    cache: RwLock<HashMap<Construction, SetObj>>,
}

impl FinSetWorkspace {
    pub fn new(sets: BTreeMap<String, FinSet>, caps: SizeCaps) -> Self {
        let named: BTreeMap<String, SetObj> =
            sets.into_iter().map(|(k, v)| (k, Arc::new(v))).collect();
        let mut labels = HashMap::new();
        for (k, v) in &named {
            labels.entry(v.clone()).or_insert_with(|| k.clone());
        }
        FinSetWorkspace { named, labels, caps, cache: RwLock::new(HashMap::new()) }
    }

    pub fn from_raw(raw: &RawFinSet, caps: SizeCaps) -> Result<Self> {
        let mut sets = BTreeMap::new();
        for (name, elems) in &raw.sets {
            let set = FinSet::atoms(elems);
            if set.len() != elems.len() {
                return Err(Error::InvalidInput(format!("set `{name}` lists an element twice")));
            }
            if set.len() > caps.exponential {
                return Err(Error::WorkspaceBlowup { requested: set.len() as u128, cap: caps.exponential });
            }
            sets.insert(name.clone(), set);
        }
        Ok(Self::new(sets, caps))
    }

    pub fn set(&self, name: &str) -> Option<SetObj> {
        self.named.get(name).cloned()
    }

    pub fn named_sets(&self) -> impl Iterator<Item = (&str, &SetObj)> {
        self.named.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn caps(&self) -> SizeCaps {
        self.caps
    }

    fn memo(&self, key: Construction, build: impl FnOnce() -> Result<FinSet>) -> Result<SetObj> {
        if let Some(s) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(s.clone());
        }
        let set = Arc::new(build()?);
        let mut cache = self.cache.write().expect("cache lock");
        Ok(cache.entry(key).or_insert(set).clone())
    }

    fn check_size(&self, requested: u128) -> Result<()> {
        if requested > self.caps.exponential as u128 {
            Err(Error::WorkspaceBlowup { requested, cap: self.caps.exponential })
        } else {
            Ok(())
        }
    }

    pub fn product(&self, x: &SetObj, y: &SetObj) -> Result<SetObj> {
        self.check_size(x.len() as u128 * y.len() as u128)?;
        self.memo(Construction::Product(x.clone(), y.clone()), || {
            let mut out = Vec::with_capacity(x.len() * y.len());
            for a in x.elements() {
                for b in y.elements() {
                    out.push(Value::Tuple(vec![a.clone(), b.clone()]));
                }
            }
            Ok(FinSet::new(out))
        })
    }

    /// The set `Z^Y` of functions `Y → Z`, listed in lexicographic order of value lists.
    pub fn exponential_set(&self, y: &SetObj, z: &SetObj) -> Result<SetObj> {
        let size = (z.len() as u128).checked_pow(y.len() as u32).unwrap_or(u128::MAX);
        self.check_size(size)?;
        self.memo(Construction::Exponential(y.clone(), z.clone()), || {
            let (n, m) = (y.len(), z.len());
            let mut out = Vec::with_capacity(size as usize);
            let mut digits = vec![0usize; n];
            if m > 0 || n == 0 {
                loop {
                    out.push(Value::Fun(digits.iter().map(|&k| z.elements()[k].clone()).collect()));
                    let mut t = n;
                    loop {
                        if t == 0 {
                            return Ok(FinSet::new(out));
                        }
                        t -= 1;
                        digits[t] += 1;
                        if digits[t] < m {
                            break;
                        }
                        digits[t] = 0;
                    }
                }
            }
            Ok(FinSet::new(out))
        })
    }

    /// The element of `Z^Y` tabulating `f: Y → Z`.
    pub fn name_of(&self, f: &Function) -> Value {
        Value::Fun(f.table.iter().map(|&k| f.tgt.elements()[k].clone()).collect())
    }

    /// Every function `x → y`, in lexicographic order of tables.
    pub fn functions(&self, x: &SetObj, y: &SetObj) -> Result<Vec<Function>> {
        let exp = self.exponential_set(x, y)?;
        exp.elements()
            .iter()
            .map(|v| {
                let Value::Fun(vals) = v else { unreachable!("exponentials hold functions") };
                let table = vals.iter().map(|w| y.index_of(w).expect("value in codomain")).collect();
                Function::new(x.clone(), y.clone(), table)
            })
            .collect()
    }

    pub fn random_function(&self, rng: &mut ChaCha8Rng, x: &SetObj, y: &SetObj) -> Option<Function> {
        if y.is_empty() && !x.is_empty() {
            return None;
        }
        let table = (0..x.len()).map(|_| rng.gen_range(0..y.len())).collect();
        Function::new(x.clone(), y.clone(), table).ok()
    }
}

impl Category for FinSetWorkspace {
    type Obj = SetObj;
    type Arr = Function;

    fn src(&self, f: &Function) -> SetObj {
        f.src.clone()
    }

    fn tgt(&self, f: &Function) -> SetObj {
        f.tgt.clone()
    }

    fn identity(&self, x: &SetObj) -> Function {
        Function { src: x.clone(), tgt: x.clone(), table: (0..x.len()).collect() }
    }

    fn compose(&self, g: &Function, f: &Function) -> Result<Function> {
        if f.tgt != g.src {
            return Err(Error::mismatch(format!(
                "cannot compose `{}` after `{}`",
                self.arr_label(g),
                self.arr_label(f)
            )));
        }
        let table = f.table.iter().map(|&i| g.table[i]).collect();
        Ok(Function { src: f.src.clone(), tgt: g.tgt.clone(), table })
    }

    fn inverse(&self, f: &Function) -> Option<Function> {
        if f.src.len() != f.tgt.len() {
            return None;
        }
        let mut inv = vec![usize::MAX; f.tgt.len()];
        for (i, &j) in f.table.iter().enumerate() {
            if inv[j] != usize::MAX {
                return None;
            }
            inv[j] = i;
        }
        Some(Function { src: f.tgt.clone(), tgt: f.src.clone(), table: inv })
    }

    fn obj_label(&self, x: &SetObj) -> String {
        if let Some(name) = self.labels.get(x) {
            return name.clone();
        }
        let shown: Vec<String> = x.elements().iter().take(8).map(|v| v.to_string()).collect();
        let more = if x.len() > 8 { ",…" } else { "" };
        format!("{{{}{more}}}", shown.join(","))
    }

    fn arr_label(&self, f: &Function) -> String {
        let vals: Vec<String> = f
            .src
            .elements()
            .iter()
            .zip(&f.table)
            .take(8)
            .map(|(x, &j)| format!("{x}↦{}", f.tgt.elements()[j]))
            .collect();
        format!("{}→{}[{}]", self.obj_label(&f.src), self.obj_label(&f.tgt), vals.join(","))
    }
}

impl FinSetWorkspace {
    /// All compatible families of `d`, in lexicographic order.
    fn compatible_families(&self, d: &Diagram<Self>) -> Result<Vec<Vec<usize>>> {
        let shape = d.shape();
        let n = shape.num_objects();
        let mut checks_at: Vec<Vec<(usize, usize, &Function)>> = vec![Vec::new(); n];
        for a in shape.arrow_ixs() {
            let (i, j) = (shape.src(&a).0, shape.tgt(&a).0);
            checks_at[i.max(j)].push((i, j, d.arrow(a)));
        }
        let sizes: Vec<usize> = d.objects().iter().map(|s| s.len()).collect();
        let mut out = Vec::new();
        if n == 0 {
            out.push(Vec::new());
            return Ok(out);
        }
        if sizes.contains(&0) {
            return Ok(out);
        }
        let mut choice = vec![0usize; n];
        let mut depth = 0;
        loop {
            if choice[depth] == sizes[depth] {
                if depth == 0 {
                    return Ok(out);
                }
                choice[depth] = 0;
                depth -= 1;
                choice[depth] += 1;
                continue;
            }
            let ok = checks_at[depth]
                .iter()
                .all(|&(i, j, f)| f.table[choice[i]] == choice[j]);
            if !ok {
                choice[depth] += 1;
                continue;
            }
            if depth + 1 == n {
                out.push(choice.clone());
                self.check_size(out.len() as u128)?;
                choice[depth] += 1;
            } else {
                depth += 1;
            }
        }
    }
}

impl Limits for FinSetWorkspace {
    /// The set of compatible families, each written as a tuple in shape-object order.
    fn limit(&self, d: &Diagram<Self>) -> Result<Cone<Self>> {
        let families = self.compatible_families(d)?;
        let value = |fam: &[usize]| {
            Value::Tuple(fam.iter().enumerate().map(|(k, &e)| d.objects()[k].elements()[e].clone()).collect())
        };
        let vertex = Arc::new(FinSet::new(families.iter().map(|f| value(f)).collect()));
        let edges = (0..d.shape().num_objects())
            .map(|k| Function::from_fn(vertex.clone(), d.objects()[k].clone(), |v| {
                let Value::Tuple(parts) = v else { unreachable!("families are tuples") };
                parts[k].clone()
            }))
            .collect::<Result<Vec<_>>>()?;
        Ok(ConeData { vertex, edges })
    }

    fn factor(&self, d: &Diagram<Self>, limit: &Cone<Self>, cone: &Cone<Self>) -> Result<Function> {
        check_cone(self, d, cone)?;
        let key = |c: &Cone<Self>, i: usize| -> Vec<usize> { c.edges.iter().map(|e| e.table[i]).collect() };
        let mut by_family = HashMap::new();
        for i in 0..limit.vertex.len() {
            if by_family.insert(key(limit, i), i).is_some() {
                return Err(Error::NotLimiting("two elements of the vertex carry the same family".into()));
            }
        }
        let table = (0..cone.vertex.len())
            .map(|i| {
                by_family.get(&key(cone, i)).copied().ok_or_else(|| {
                    Error::NotLimiting(format!(
                        "family of `{}` is missing from the vertex",
                        cone.vertex.elements()[i]
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Function::new(cone.vertex.clone(), limit.vertex.clone(), table)
    }

    /// Cone laws, then a bijection between the vertex and the compatible families.
    fn verify_limit(&self, d: &Diagram<Self>, cone: &Cone<Self>) -> Transcript {
        let mut t = Transcript::new();
        let laws = check_cone(self, d, cone);
        let ok = t.record("cone.commutes", source::LIMITS, laws.is_ok(), || {
            laws.as_ref().err().map(|e| e.to_string()).unwrap_or_default()
        });
        if !ok {
            return t;
        }
        match self.compatible_families(d) {
            Err(e) => {
                t.record("cone.terminal", source::LIMITS, false, || e.to_string());
            }
            Ok(families) => {
                let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
                for i in 0..cone.vertex.len() {
                    let fam: Vec<usize> = cone.edges.iter().map(|e| e.table[i]).collect();
                    *seen.entry(fam).or_default() += 1;
                }
                for fam in &families {
                    let k = seen.get(fam).copied().unwrap_or(0);
                    t.record("cone.terminal", source::LIMITS, k == 1, || {
                        format!("family {fam:?} is carried by {k} element(s) of the vertex")
                    });
                }
                t.record("cone.terminal", source::LIMITS, seen.len() == families.len(), || {
                    "the vertex carries families that are not compatible".into()
                });
            }
        }
        t
    }
}

fn pair_parts(v: &Value) -> (&Value, &Value) {
    match v {
        Value::Tuple(p) if p.len() == 2 => (&p[0], &p[1]),
        _ => unreachable!("products hold pairs"),
    }
}

impl Smcc for FinSetWorkspace {
    fn unit(&self) -> SetObj {
        Arc::new(FinSet::new(vec![Value::Tuple(Vec::new())]))
    }

    fn tensor(&self, x: &SetObj, y: &SetObj) -> Result<SetObj> {
        self.product(x, y)
    }

    fn tensor_arrows(&self, f: &Function, g: &Function) -> Result<Function> {
        let src = self.product(&f.src, &g.src)?;
        let tgt = self.product(&f.tgt, &g.tgt)?;
        let (m, n) = (g.src.len(), g.tgt.len());
        let table = (0..src.len()).map(|k| f.table[k / m] * n + g.table[k % m]).collect();
        Function::new(src, tgt, table)
    }

    fn associator(&self, x: &SetObj, y: &SetObj, z: &SetObj) -> Result<Function> {
        let src = self.product(x, &self.product(y, z)?)?;
        let tgt = self.product(&self.product(x, y)?, z)?;
        Function::from_fn(src, tgt, |v| {
            let (a, bc) = pair_parts(v);
            let (b, c) = pair_parts(bc);
            Value::Tuple(vec![Value::Tuple(vec![a.clone(), b.clone()]), c.clone()])
        })
    }

    fn right_unitor(&self, x: &SetObj) -> Result<Function> {
        let src = self.product(x, &self.unit())?;
        Function::from_fn(src, x.clone(), |v| pair_parts(v).0.clone())
    }

    fn left_unitor(&self, x: &SetObj) -> Result<Function> {
        let src = self.product(&self.unit(), x)?;
        Function::from_fn(src, x.clone(), |v| pair_parts(v).1.clone())
    }

    fn symmetry(&self, x: &SetObj, y: &SetObj) -> Result<Function> {
        let src = self.product(x, y)?;
        let tgt = self.product(y, x)?;
        Function::from_fn(src, tgt, |v| {
            let (a, b) = pair_parts(v);
            Value::Tuple(vec![b.clone(), a.clone()])
        })
    }

    fn exponential(&self, y: &SetObj, z: &SetObj) -> Result<SetObj> {
        self.exponential_set(y, z)
    }

    /// `Λ(f)(x) = (y ↦ f(x, y))`.
    fn curry(&self, x: &SetObj, y: &SetObj, f: &Function) -> Result<Function> {
        if f.src != self.product(x, y)? {
            return Err(Error::mismatch(format!(
                "`{}` does not start at `{}` × `{}`",
                self.arr_label(f),
                self.obj_label(x),
                self.obj_label(y)
            )));
        }
        let exp = self.exponential_set(y, &f.tgt)?;
        let (m, k) = (y.len(), f.tgt.len());
        let table = (0..x.len())
            .map(|a| {
                // Index in lexicographic order of value lists: digits base |Z|.
                (0..m).fold(0usize, |acc, b| acc * k + f.table[a * m + b])
            })
            .collect();
        Function::new(x.clone(), exp, table)
    }

    /// `ev(h, y) = h(y)`.
    fn eval(&self, y: &SetObj, z: &SetObj) -> Result<Function> {
        let exp = self.exponential_set(y, z)?;
        let src = self.product(&exp, y)?;
        Function::from_fn(src, z.clone(), |v| {
            let (h, b) = pair_parts(v);
            let Value::Fun(vals) = h else { unreachable!("exponentials hold functions") };
            vals[y.index_of(b).expect("argument in domain")].clone()
        })
    }
}

impl LawSource for FinSetWorkspace {
    /// Random typed cases over the named sets, reproducible from the seed.
    fn law_cases(&self, opts: &LawSuiteOptions) -> Result<LawCases<SetObj, Function>> {
        let pool: Vec<SetObj> = self.named.values().cloned().collect();
        if pool.is_empty() {
            return Err(Error::InvalidInput("the workspace has no named sets".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let pick = |rng: &mut ChaCha8Rng| pool[rng.gen_range(0..pool.len())].clone();
        let mut c = LawCases { objects: pool.clone(), ..LawCases::default() };
        for x in &pool {
            for y in &pool {
                c.pairs.push((x.clone(), y.clone()));
            }
        }
        let attempts = opts.samples.saturating_mul(50).max(1);
        let mut tries = 0;
        let mut budget = || {
            tries += 1;
            tries <= attempts
        };

        while c.exp_maps.len() < opts.samples && budget() {
            let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let e = self.exponential(&y, &z)?;
            if let Some(f) = self.random_function(&mut rng, &x, &e) {
                c.exp_maps.push((y, z, f));
            }
        }
        tries = 0;
        let mut budget = || {
            tries += 1;
            tries <= attempts
        };
        while c.precompose.len() < opts.samples && budget() {
            let (x, x2, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let e = self.exponential(&y, &z)?;
            let f = self.random_function(&mut rng, &x, &x2);
            let g = self.random_function(&mut rng, &x2, &e);
            if let (Some(f), Some(g)) = (f, g) {
                c.precompose.push((y, z, f, g));
            }
        }
        tries = 0;
        let mut budget = || {
            tries += 1;
            tries <= attempts
        };
        while c.postcompose.len() < opts.samples && budget() {
            let (x, y, z, z2) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let e = self.exponential(&y, &z)?;
            let f = self.random_function(&mut rng, &x, &e);
            let g = self.random_function(&mut rng, &z, &z2);
            if let (Some(f), Some(g)) = (f, g) {
                c.postcompose.push((y, z, f, g));
            }
        }
        tries = 0;
        let mut budget = || {
            tries += 1;
            tries <= attempts
        };
        while c.curried.len() < opts.samples && budget() {
            let (w, x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let xy = self.product(&x, &y)?;
            let f = self.random_function(&mut rng, &xy, &z);
            let h = self.random_function(&mut rng, &w, &x);
            if let (Some(f), Some(h)) = (f, h) {
                c.curried.push((x, y, f, h));
            }
        }
        if opts.extended {
            for _ in 0..opts.samples {
                c.triples.push((pick(&mut rng), pick(&mut rng), pick(&mut rng)));
                c.quads.push((pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng)));
            }
        }
        Ok(c)
    }

    /// Checks evaluation and currying against direct table application.
    fn extra_laws(&self, t: &mut Transcript) {
        for y in self.named.values() {
            for z in self.named.values() {
                let Ok(ev) = self.eval(y, z) else {
                    t.record("eval.pointwise", source::MONOIDAL_CLOSED, false, || "eval failed".into());
                    continue;
                };
                for (k, v) in ev.src.elements().iter().enumerate() {
                    let (h, b) = pair_parts(v);
                    let Value::Fun(vals) = h else { continue };
                    let expect = &vals[y.index_of(b).unwrap_or(0)];
                    let got = &z.elements()[ev.table[k]];
                    t.record("eval.pointwise", source::MONOIDAL_CLOSED, expect == got, || {
                        format!("ev({h}, {b}) = {got}, expected {expect}")
                    });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smcc::{ev_at, exp_co, exp_contra, iota, swap, Element};

    fn ws() -> FinSetWorkspace {
        let mut sets = BTreeMap::new();
        sets.insert("empty".to_string(), FinSet::new(Vec::new()));
        sets.insert("one".to_string(), FinSet::atoms(&["*"]));
        sets.insert("two".to_string(), FinSet::atoms(&["0", "1"]));
        sets.insert("three".to_string(), FinSet::atoms(&["a", "b", "c"]));
        FinSetWorkspace::new(sets, SizeCaps::default())
    }

    fn atom(s: &str) -> Value {
        Value::Atom(s.into())
    }

    #[test]
    fn exponential_sizes() {
        let w = ws();
        let two = w.set("two").unwrap();
        let empty = w.set("empty").unwrap();
        assert_eq!(w.exponential(&two, &two).unwrap().len(), 4);
        assert_eq!(w.exponential(&empty, &empty).unwrap().len(), 1);
        assert_eq!(w.exponential(&two, &empty).unwrap().len(), 0);
        assert_eq!(w.exponential(&w.set("three").unwrap(), &two).unwrap().len(), 8);
    }

    #[test]
    fn exponential_cap() {
        let w = FinSetWorkspace::new(
            BTreeMap::from([("three".to_string(), FinSet::atoms(&["a", "b", "c"]))]),
            SizeCaps { quantale: 32, exponential: 20 },
        );
        let s = w.set("three").unwrap();
        assert!(matches!(
            w.exponential(&s, &s),
            Err(Error::WorkspaceBlowup { requested: 27, cap: 20 })
        ));
    }

    #[test]
    fn eval_is_application() {
        let w = ws();
        let (two, three) = (w.set("two").unwrap(), w.set("three").unwrap());
        let ev = w.eval(&two, &three).unwrap();
        for v in ev.src().elements() {
            let (h, b) = pair_parts(v);
            let Value::Fun(vals) = h else { panic!() };
            let want = if *b == atom("0") { &vals[0] } else { &vals[1] };
            assert_eq!(ev.apply(v).unwrap(), want);
        }
    }

    #[test]
    fn curry_of_projection_is_constant_family() {
        let w = ws();
        let (one, two) = (w.set("one").unwrap(), w.set("two").unwrap());
        let pr = w.right_unitor(&two).unwrap();
        // X = {*}, f = second projection {*}×Y → Y.
        let xy = w.product(&one, &two).unwrap();
        let snd = Function::from_fn(xy, two.clone(), |v| pair_parts(v).1.clone()).unwrap();
        let lam = w.curry(&one, &two, &snd).unwrap();
        assert_eq!(lam.apply(&atom("*")).unwrap(), &Value::Fun(vec![atom("0"), atom("1")]));
        assert_eq!(w.compose(&w.eval(&two, &two).unwrap(), &w.tensor_arrows(&lam, &w.identity(&two)).unwrap()).unwrap(), snd);
        assert_eq!(pr.src().len(), 2);
    }

    #[test]
    fn swap_pointwise() {
        let w = ws();
        let (one, two) = (w.set("one").unwrap(), w.set("two").unwrap());
        // f: {0,1} → 2^{•}, f(x)(•) = x.
        let e = w.exponential(&one, &two).unwrap();
        let f = Function::from_fn(two.clone(), e, |x| Value::Fun(vec![x.clone()])).unwrap();
        let s = swap(&w, &f, &one, &two).unwrap();
        assert_eq!(s.apply(&atom("*")).unwrap(), &Value::Fun(vec![atom("0"), atom("1")]));
        assert_eq!(swap(&w, &s, &two, &two).unwrap(), f);
    }

    #[test]
    fn iota_and_ev_at() {
        let w = ws();
        let two = w.set("two").unwrap();
        let three = w.set("three").unwrap();
        let i = iota(&w, &two).unwrap();
        assert_eq!(i.apply(&atom("1")).unwrap(), &Value::Fun(vec![atom("1")]));
        let e = Function::from_fn(w.unit(), two.clone(), |_| atom("0")).unwrap();
        let e = Element::new(&w, e).unwrap();
        let ev = ev_at(&w, &e, &three).unwrap();
        for h in w.exponential(&two, &three).unwrap().elements() {
            let Value::Fun(vals) = h else { panic!() };
            assert_eq!(ev.apply(h).unwrap(), &vals[0]);
        }
    }

    #[test]
    fn hom_actions_are_pre_and_postcomposition() {
        let w = ws();
        let (two, three) = (w.set("two").unwrap(), w.set("three").unwrap());
        let f = Function::new(two.clone(), three.clone(), vec![2, 0]).unwrap();
        let g = Function::new(three.clone(), two.clone(), vec![1, 1, 0]).unwrap();
        let zf = exp_contra(&w, &f, &two).unwrap();
        let gy = exp_co(&w, &g, &two).unwrap();
        for h in w.functions(&three, &two).unwrap() {
            let got = zf.apply(&w.name_of(&h)).unwrap();
            assert_eq!(got, &w.name_of(&w.compose(&h, &f).unwrap()));
        }
        for h in w.functions(&two, &three).unwrap() {
            let got = gy.apply(&w.name_of(&h)).unwrap();
            assert_eq!(got, &w.name_of(&w.compose(&g, &h).unwrap()));
        }
    }

    #[test]
    fn limit_of_discrete_pair_is_product() {
        use crate::fincat::FinCategoryBuilder;
        let w = ws();
        let mut b = FinCategoryBuilder::new();
        b.object("i").object("j");
        let shape = Arc::new(b.build().unwrap());
        let (two, three) = (w.set("two").unwrap(), w.set("three").unwrap());
        let d = crate::diagram::FunctorData::new(
            &w,
            shape,
            vec![two.clone(), three.clone()],
            vec![w.identity(&two), w.identity(&three)],
        )
        .unwrap();
        let l = w.limit(&d).unwrap();
        assert_eq!(l.vertex.len(), 6);
        assert!(w.verify_limit(&d, &l).all_pass());
        let prod = w.product(&two, &three).unwrap();
        let cone = ConeData {
            vertex: prod.clone(),
            edges: vec![
                Function::from_fn(prod.clone(), two.clone(), |v| pair_parts(v).0.clone()).unwrap(),
                Function::from_fn(prod.clone(), three.clone(), |v| pair_parts(v).1.clone()).unwrap(),
            ],
        };
        let m = w.factor(&d, &l, &cone).unwrap();
        assert!(w.inverse(&m).is_some());
        // A cone whose vertex repeats a family is not limiting.
        let bad = ConeData {
            vertex: two.clone(),
            edges: vec![
                Function::new(two.clone(), two.clone(), vec![0, 0]).unwrap(),
                Function::new(two.clone(), three.clone(), vec![1, 1]).unwrap(),
            ],
        };
        assert!(!w.verify_limit(&d, &bad).all_pass());
    }
}
