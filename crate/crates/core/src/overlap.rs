//! Collapsing and dependence graphs over extended arguments, and the
//! overlapping test on sets of schemas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::model::Symbol;
use crate::skolem::{Schema, SkolemError};
use crate::syntax::{BindPrefix, DerivedRelation, QuantPrefix};

/// A pair `(σ, a)`; `schema` indexes the schema list the graph was built on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtendedArgument {
    pub schema: usize,
    pub argument: Symbol,
}

impl ExtendedArgument {
    /// DOT label `s<i>.<arg>`, 1-based.
    pub fn label(&self) -> String {
        format!("s{}.{}", self.schema + 1, self.argument)
    }
}

/// Schema of a one-binding leaf `(℘, ♭, r̂)`.
pub fn extract_schema(
    prefix: &QuantPrefix,
    binding: &BindPrefix,
    _relation: &DerivedRelation,
) -> Result<Schema, SkolemError> {
    Schema::new(prefix.clone(), binding.clone())
}

fn check_arguments(schemas: &[&Schema], args: &BTreeSet<Symbol>) -> Result<(), SkolemError> {
    let Some(first) = schemas.first() else { return Ok(()) };
    let shared = first.arguments();
    for s in schemas {
        let own = s.arguments();
        if own != shared || !args.is_subset(&own) {
            return Err(SkolemError::ArgumentMismatch((*s).clone(), shared.iter().cloned().collect()));
        }
    }
    Ok(())
}

fn vertices(schemas: &[&Schema], args: &BTreeSet<Symbol>) -> Vec<ExtendedArgument> {
    (0..schemas.len())
        .flat_map(|i| args.iter().map(move |a| ExtendedArgument { schema: i, argument: a.clone() }))
        .collect()
}

/// The collapsing equivalence, stored as a partition.
#[derive(Clone, Debug)]
pub struct CollapsingGraph {
    schemas: Vec<Schema>,
    vertices: Vec<ExtendedArgument>,
    class: BTreeMap<ExtendedArgument, usize>,
    classes: Vec<Vec<ExtendedArgument>>,
}

impl CollapsingGraph {
    pub fn schemas(&self) -> &[Schema] {
        &self.schemas
    }

    pub fn vertices(&self) -> &[ExtendedArgument] {
        &self.vertices
    }

    /// Equivalence classes, each sorted, listed by their least member.
    pub fn classes(&self) -> &[Vec<ExtendedArgument>] {
        &self.classes
    }

    pub fn equivalent(&self, e1: &ExtendedArgument, e2: &ExtendedArgument) -> bool {
        match (self.class.get(e1), self.class.get(e2)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    pub fn is_existential(&self, e: &ExtendedArgument) -> bool {
        self.schemas[e.schema].is_existential(&e.argument)
    }

    fn class_members(&self, e: &ExtendedArgument) -> &[ExtendedArgument] {
        &self.classes[self.class[e]]
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph collapsing {\n");
        for v in &self.vertices {
            let shape = if self.is_existential(v) { "box" } else { "ellipse" };
            let _ = writeln!(out, "  \"{}\" [shape={shape}];", v.label());
        }
        for class in &self.classes {
            for pair in class.windows(2) {
                let _ = writeln!(out, "  \"{}\" -- \"{}\";", pair[0].label(), pair[1].label());
            }
        }
        out.push_str("}\n");
        out
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let p = self.0[i];
        if p == i {
            return i;
        }
        let root = self.find(p);
        self.0[i] = root;
        root
    }

    fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

pub fn build_collapsing_graph(schemas: &[&Schema], args: &BTreeSet<Symbol>) -> Result<CollapsingGraph, SkolemError> {
    check_arguments(schemas, args)?;
    let vertices = vertices(schemas, args);
    let mut uf = UnionFind((0..vertices.len()).collect());
    for (i, e1) in vertices.iter().enumerate() {
        for (j, e2) in vertices.iter().enumerate().skip(i + 1) {
            let edge = if e1.schema == e2.schema {
                schemas[e1.schema].collapses(&e1.argument, &e2.argument)
            } else {
                e1.argument == e2.argument
            };
            if edge {
                uf.union(i, j);
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<ExtendedArgument>> = BTreeMap::new();
    for (i, v) in vertices.iter().enumerate() {
        by_root.entry(uf.find(i)).or_default().push(v.clone());
    }
    let mut classes: Vec<Vec<ExtendedArgument>> = by_root.into_values().collect();
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    let class = classes.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |v| (v.clone(), i))).collect();
    Ok(CollapsingGraph { schemas: schemas.iter().map(|s| (*s).clone()).collect(), vertices, class, classes })
}

/// Two collapsed existential vertices that their own schema does not collapse.
pub fn find_conflict(graph: &CollapsingGraph) -> Option<(ExtendedArgument, ExtendedArgument)> {
    for class in &graph.classes {
        let existential: Vec<&ExtendedArgument> = class.iter().filter(|e| graph.is_existential(e)).collect();
        for (i, e1) in existential.iter().enumerate() {
            for e2 in &existential[i + 1..] {
                let same = e1.schema == e2.schema;
                if !same || !graph.schemas[e1.schema].collapses(&e1.argument, &e2.argument) {
                    return Some(((*e1).clone(), (*e2).clone()));
                }
            }
        }
    }
    None
}

pub fn is_conflicting(graph: &CollapsingGraph) -> bool {
    find_conflict(graph).is_some()
}

#[derive(Clone, Debug)]
pub struct DependenceGraph {
    vertices: Vec<ExtendedArgument>,
    edges: BTreeSet<(ExtendedArgument, ExtendedArgument)>,
}

impl DependenceGraph {
    pub fn vertices(&self) -> &[ExtendedArgument] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(ExtendedArgument, ExtendedArgument)> {
        &self.edges
    }

    pub fn has_edge(&self, from: &ExtendedArgument, to: &ExtendedArgument) -> bool {
        self.edges.contains(&(from.clone(), to.clone()))
    }

    /// Some cycle as a vertex sequence (a self-loop yields one vertex).
    pub fn find_cycle(&self) -> Option<Vec<ExtendedArgument>> {
        let mut succ: BTreeMap<&ExtendedArgument, Vec<&ExtendedArgument>> = BTreeMap::new();
        for (a, b) in &self.edges {
            succ.entry(a).or_default().push(b);
        }
        // 0 unvisited, 1 on stack, 2 done
        let mut state: BTreeMap<&ExtendedArgument, u8> = BTreeMap::new();
        let mut stack: Vec<&ExtendedArgument> = Vec::new();
        fn dfs<'a>(
            v: &'a ExtendedArgument,
            succ: &BTreeMap<&'a ExtendedArgument, Vec<&'a ExtendedArgument>>,
            state: &mut BTreeMap<&'a ExtendedArgument, u8>,
            stack: &mut Vec<&'a ExtendedArgument>,
        ) -> Option<Vec<ExtendedArgument>> {
            state.insert(v, 1);
            stack.push(v);
            for w in succ.get(v).into_iter().flatten() {
                match state.get(w).copied().unwrap_or(0) {
                    1 => {
                        let start = stack.iter().position(|x| x == w).expect("on stack");
                        return Some(stack[start..].iter().map(|x| (*x).clone()).collect());
                    }
                    0 => {
                        if let Some(c) = dfs(w, succ, state, stack) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            stack.pop();
            state.insert(v, 2);
            None
        }
        for v in &self.vertices {
            if state.get(v).copied().unwrap_or(0) == 0 {
                if let Some(c) = dfs(v, &succ, &mut state, &mut stack) {
                    return Some(c);
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dependence {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", v.label());
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", a.label(), b.label());
        }
        out.push_str("}\n");
        out
    }
}

/// Edges `e1 → e3` whenever `e1 ≈ e2` and `a(e2) ⇝σ a(e3)` within one schema.
pub fn build_dependence_graph(schemas: &[&Schema], args: &BTreeSet<Symbol>) -> Result<DependenceGraph, SkolemError> {
    let collapsing = build_collapsing_graph(schemas, args)?;
    Ok(dependence_from(&collapsing))
}

fn dependence_from(c: &CollapsingGraph) -> DependenceGraph {
    let mut edges = BTreeSet::new();
    for e1 in &c.vertices {
        for e2 in c.class_members(e1) {
            let sigma = &c.schemas[e2.schema];
            for e3 in c.vertices.iter().filter(|e| e.schema == e2.schema) {
                if sigma.depends(&e2.argument, &e3.argument) {
                    edges.insert((e1.clone(), e3.clone()));
                }
            }
        }
    }
    DependenceGraph { vertices: c.vertices.clone(), edges }
}

/// Why a schema set fails to overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OverlapFailure {
    Conflict(ExtendedArgument, ExtendedArgument),
    Cycle(Vec<ExtendedArgument>),
}

/// `None` when the schemas overlap over `args`.
pub fn overlap_failure(schemas: &[&Schema], args: &BTreeSet<Symbol>) -> Result<Option<OverlapFailure>, SkolemError> {
    let c = build_collapsing_graph(schemas, args)?;
    if let Some((e1, e2)) = find_conflict(&c) {
        return Ok(Some(OverlapFailure::Conflict(e1, e2)));
    }
    Ok(dependence_from(&c).find_cycle().map(OverlapFailure::Cycle))
}

pub fn is_overlapping(schemas: &[&Schema], args: &BTreeSet<Symbol>) -> Result<bool, SkolemError> {
    Ok(overlap_failure(schemas, args)?.is_none())
}

pub enum Graph<'a> {
    Collapsing(&'a CollapsingGraph),
    Dependence(&'a DependenceGraph),
}

pub fn export_dot(graph: Graph<'_>) -> String {
    match graph {
        Graph::Collapsing(c) => c.to_dot(),
        Graph::Dependence(d) => d.to_dot(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::sym;

    fn schema(prefix: &[(&str, &str)], binding: &[(&str, &str)]) -> Schema {
        Schema::new(QuantPrefix::from_literals(prefix), BindPrefix::from_literals(binding)).unwrap()
    }

    fn abc() -> BTreeSet<Symbol> {
        [sym("a"), sym("b"), sym("c")].into()
    }

    fn xyz() -> Vec<(&'static str, &'static str)> {
        vec![("a", "x"), ("b", "y"), ("c", "z")]
    }

    fn s1() -> Schema {
        schema(&[("forall", "x"), ("exists", "y"), ("forall", "z")], &xyz())
    }

    fn s2() -> Schema {
        schema(&[("forall", "y"), ("exists", "z"), ("forall", "x")], &xyz())
    }

    fn e(schema: usize, a: &str) -> ExtendedArgument {
        ExtendedArgument { schema, argument: sym(a) }
    }

    #[test]
    fn phi1_overlaps() {
        let s3 = schema(&[("forall", "x"), ("forall", "y"), ("forall", "z")], &xyz());
        let set = [&s1(), &s2(), &s3];
        let c = build_collapsing_graph(&set, &abc()).unwrap();
        assert_eq!(c.classes().len(), 3);
        assert_eq!(c.classes()[0], vec![e(0, "a"), e(1, "a"), e(2, "a")]);
        assert!(!is_conflicting(&c));
        let d = build_dependence_graph(&set, &abc()).unwrap();
        assert!(d.is_acyclic());
        assert!(d.has_edge(&e(0, "a"), &e(0, "b")) && d.has_edge(&e(2, "b"), &e(1, "c")));
        assert!(is_overlapping(&set, &abc()).unwrap());
        // Every subset overlaps over every argument subset.
        for mask in 1..8u8 {
            let sub: Vec<&Schema> = (0..3).filter(|i| mask >> i & 1 == 1).map(|i| set[i]).collect();
            for amask in 0..8u8 {
                let args: BTreeSet<Symbol> = ["a", "b", "c"]
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| amask >> i & 1 == 1)
                    .map(|(_, a)| sym(a))
                    .collect();
                assert!(is_overlapping(&sub, &args).unwrap());
            }
        }
    }

    #[test]
    fn phi2_self_loop() {
        let s3 = schema(&[("forall", "x"), ("forall", "y")], &[("a", "x"), ("b", "y"), ("c", "y")]);
        let (s1, s2) = (s1(), s2());
        let full = [&s1, &s2, &s3];
        let c = build_collapsing_graph(&full, &abc()).unwrap();
        assert!(c.equivalent(&e(2, "b"), &e(2, "c")));
        assert!(c.equivalent(&e(0, "b"), &e(1, "c")));
        let d = build_dependence_graph(&full, &abc()).unwrap();
        assert!(d.has_edge(&e(1, "c"), &e(1, "c")));
        assert!(d.to_dot().contains("\"s2.c\" -> \"s2.c\""));
        assert!(!is_overlapping(&full, &abc()).unwrap());
        let pair = [&s2, &s3];
        let c = build_collapsing_graph(&pair, &abc()).unwrap();
        assert!(!is_conflicting(&c));
        let d = build_dependence_graph(&pair, &abc()).unwrap();
        assert!(d.has_edge(&e(0, "c"), &e(0, "c")));
        assert!(!is_overlapping(&pair, &abc()).unwrap());
    }

    #[test]
    fn phi3_three_cycle() {
        let s3 = schema(&[("forall", "z"), ("exists", "x"), ("forall", "y")], &xyz());
        let set = [&s1(), &s2(), &s3];
        let c = build_collapsing_graph(&set, &abc()).unwrap();
        assert!(!is_conflicting(&c));
        let d = build_dependence_graph(&set, &abc()).unwrap();
        assert!(d.has_edge(&e(2, "a"), &e(0, "b")));
        assert!(d.has_edge(&e(0, "b"), &e(1, "c")));
        assert!(d.has_edge(&e(1, "c"), &e(2, "a")));
        assert!(!d.is_acyclic());
    }

    #[test]
    fn phi4_conflict() {
        let s3 = schema(&[("exists", "z"), ("forall", "x"), ("forall", "y")], &xyz());
        let s2 = s2();
        let pair = [&s2, &s3];
        let c = build_collapsing_graph(&pair, &abc()).unwrap();
        assert_eq!(find_conflict(&c), Some((e(0, "c"), e(1, "c"))));
        assert!(!is_overlapping(&pair, &abc()).unwrap());
    }

    #[test]
    fn singletons_and_empty_sets() {
        let s = schema(&[("forall", "x"), ("exists", "y")], &[("a", "x"), ("b", "y"), ("c", "y")]);
        assert!(is_overlapping(&[&s], &abc()).unwrap());
        let c = build_collapsing_graph(&[&s], &abc()).unwrap();
        assert!(c.equivalent(&e(0, "b"), &e(0, "c")));
        let empty = build_collapsing_graph(&[], &BTreeSet::new()).unwrap();
        assert_eq!(empty.to_dot(), "graph collapsing {\n}\n");
        let other = schema(&[("forall", "x")], &[("a", "x")]);
        assert!(build_collapsing_graph(&[&s, &other], &abc()).is_err());
    }

    #[test]
    fn renaming_invariance() {
        let renamed =
            schema(&[("forall", "u"), ("exists", "v"), ("forall", "w")], &[("a", "u"), ("b", "v"), ("c", "w")]);
        let s2 = s2();
        let s3 = schema(&[("forall", "z"), ("exists", "x"), ("forall", "y")], &xyz());
        assert_eq!(
            is_overlapping(&[&s1(), &s2, &s3], &abc()).unwrap(),
            is_overlapping(&[&renamed, &s2, &s3], &abc()).unwrap()
        );
    }
}
