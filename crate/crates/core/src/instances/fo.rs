//! Finite first-order relational structures at desk scale: labeled
//! structures up to a universe bound, homomorphisms between them, bounded
//! quantifier evaluation, and the resulting single-signature institution.

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, Morphism};
use crate::institution::{FormulaClassId, Institution, SignatureId, SignatureMorphism};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

/// A relational signature: names with arities.
pub type RelSignature = Vec<(String, usize)>;

/// A finite structure over a relational signature. The universe is
/// {1, ..., universe}; interpretations are tuple sets aligned with the
/// signature order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelStructure {
    pub universe: usize,
    pub interp: Vec<BTreeSet<Vec<usize>>>,
}

impl RelStructure {
    pub fn new(sig: &RelSignature, universe: usize) -> Self {
        RelStructure {
            universe,
            interp: vec![BTreeSet::new(); sig.len()],
        }
    }

    pub fn with_tuples(
        sig: &RelSignature,
        universe: usize,
        rel: &str,
        tuples: &[Vec<usize>],
    ) -> Result<Self> {
        let mut s = RelStructure::new(sig, universe);
        let ri = sig
            .iter()
            .position(|(n, _)| n == rel)
            .ok_or_else(|| Error::Config(format!("unknown relation `{rel}`")))?;
        for t in tuples {
            if t.len() != sig[ri].1 {
                return Err(Error::Config(format!(
                    "tuple arity {} does not match relation `{rel}`",
                    t.len()
                )));
            }
            if t.iter().any(|&x| x == 0 || x > universe) {
                return Err(Error::Config(format!("tuple {t:?} outside universe")));
            }
            s.interp[ri].insert(t.clone());
        }
        Ok(s)
    }

    /// Canonical structure id, e.g. `k2.E(1,2)(2,1)`.
    pub fn id(&self, sig: &RelSignature) -> String {
        let mut s = format!("k{}", self.universe);
        for (ri, (name, _)) in sig.iter().enumerate() {
            s.push('.');
            s.push_str(name);
            for t in &self.interp[ri] {
                let inner: Vec<String> = t.iter().map(usize::to_string).collect();
                s.push_str(&format!("({})", inner.join(",")));
            }
        }
        s
    }

    /// Is `map` (1-based images of 1..universe) relation-preserving into
    /// `target`?
    pub fn preserves(&self, target: &RelStructure, map: &[usize]) -> bool {
        for (ri, tuples) in self.interp.iter().enumerate() {
            for t in tuples {
                let image: Vec<usize> = t.iter().map(|&x| map[x - 1]).collect();
                if !target.interp[ri].contains(&image) {
                    return false;
                }
            }
        }
        true
    }
}

/// All homomorphisms A -> B by backtracking over images with pruning on
/// fully assigned tuples. Returned maps are 1-based image vectors in
/// lexicographic order.
pub fn enumerate_homomorphisms(a: &RelStructure, b: &RelStructure) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut partial: Vec<usize> = Vec::with_capacity(a.universe);
    backtrack(a, b, &mut partial, &mut out);
    out
}

fn backtrack(a: &RelStructure, b: &RelStructure, partial: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let next = partial.len();
    if next == a.universe {
        out.push(partial.clone());
        return;
    }
    'candidates: for img in 1..=b.universe {
        partial.push(img);
        // Check every tuple whose entries are all assigned so far.
        for (ri, tuples) in a.interp.iter().enumerate() {
            for t in tuples {
                if t.iter().all(|&x| x <= partial.len()) {
                    let image: Vec<usize> = t.iter().map(|&x| partial[x - 1]).collect();
                    if !b.interp[ri].contains(&image) {
                        partial.pop();
                        continue 'candidates;
                    }
                }
            }
        }
        backtrack(a, b, partial, out);
        partial.pop();
    }
}

/// Closed first-order formulas over a relational signature, in prefix
/// form. Terms are variables only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoFormula {
    Atom(String, Vec<String>),
    Not(Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    Implies(Box<FoFormula>, Box<FoFormula>),
    Forall(String, Box<FoFormula>),
    Exists(String, Box<FoFormula>),
}

impl FoFormula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            FoFormula::Atom(_, vars) => vars.iter().cloned().collect(),
            FoFormula::Not(f) => f.free_vars(),
            FoFormula::And(l, r) | FoFormula::Or(l, r) | FoFormula::Implies(l, r) => {
                let mut s = l.free_vars();
                s.extend(r.free_vars());
                s
            }
            FoFormula::Forall(v, f) | FoFormula::Exists(v, f) => {
                let mut s = f.free_vars();
                s.remove(v);
                s
            }
        }
    }
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoFormula::Atom(r, vars) => write!(f, "({} {})", r, vars.join(" ")),
            FoFormula::Not(x) => write!(f, "(not {x})"),
            FoFormula::And(l, r) => write!(f, "(and {l} {r})"),
            FoFormula::Or(l, r) => write!(f, "(or {l} {r})"),
            FoFormula::Implies(l, r) => write!(f, "(implies {l} {r})"),
            FoFormula::Forall(v, x) => write!(f, "(forall {v} {x})"),
            FoFormula::Exists(v, x) => write!(f, "(exists {v} {x})"),
        }
    }
}

/// Parse the prefix s-expression form, e.g.
/// `(forall x (exists y (E x y)))`.
pub fn parse_fo_formula(text: &str) -> Result<FoFormula> {
    let tokens = tokenize(text)?;
    let mut pos = 0usize;
    let f = parse_sexpr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Syntax {
            offset: pos + 1,
            message: "trailing tokens after formula".into(),
        });
    }
    Ok(f)
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Symbol(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut sym = String::new();
    for c in text.chars() {
        match c {
            '(' | ')' => {
                if !sym.is_empty() {
                    out.push(Token::Symbol(std::mem::take(&mut sym)));
                }
                out.push(if c == '(' { Token::Open } else { Token::Close });
            }
            c if c.is_whitespace() => {
                if !sym.is_empty() {
                    out.push(Token::Symbol(std::mem::take(&mut sym)));
                }
            }
            c => sym.push(c),
        }
    }
    if !sym.is_empty() {
        out.push(Token::Symbol(sym));
    }
    Ok(out)
}

fn parse_sexpr(tokens: &[Token], pos: &mut usize) -> Result<FoFormula> {
    match tokens.get(*pos) {
        Some(Token::Open) => {}
        other => {
            return Err(Error::Syntax {
                offset: *pos + 1,
                message: format!("expected `(`, found {other:?}"),
            })
        }
    }
    *pos += 1;
    let Some(Token::Symbol(head)) = tokens.get(*pos) else {
        return Err(Error::Syntax {
            offset: *pos + 1,
            message: "expected operator or relation name".into(),
        });
    };
    let head = head.clone();
    *pos += 1;
    let formula = match head.as_str() {
        "not" => FoFormula::Not(Box::new(parse_sexpr(tokens, pos)?)),
        "and" | "or" | "implies" => {
            let l = parse_sexpr(tokens, pos)?;
            let r = parse_sexpr(tokens, pos)?;
            match head.as_str() {
                "and" => FoFormula::And(Box::new(l), Box::new(r)),
                "or" => FoFormula::Or(Box::new(l), Box::new(r)),
                _ => FoFormula::Implies(Box::new(l), Box::new(r)),
            }
        }
        "forall" | "exists" => {
            let Some(Token::Symbol(var)) = tokens.get(*pos) else {
                return Err(Error::Syntax {
                    offset: *pos + 1,
                    message: "expected a variable".into(),
                });
            };
            let var = var.clone();
            *pos += 1;
            let body = parse_sexpr(tokens, pos)?;
            if head == "forall" {
                FoFormula::Forall(var, Box::new(body))
            } else {
                FoFormula::Exists(var, Box::new(body))
            }
        }
        rel => {
            let mut vars = Vec::new();
            while let Some(Token::Symbol(v)) = tokens.get(*pos) {
                vars.push(v.clone());
                *pos += 1;
            }
            FoFormula::Atom(rel.to_string(), vars)
        }
    };
    match tokens.get(*pos) {
        Some(Token::Close) => {
            *pos += 1;
            Ok(formula)
        }
        other => Err(Error::Syntax {
            offset: *pos + 1,
            message: format!("expected `)`, found {other:?}"),
        }),
    }
}

/// Tarskian evaluation with bounded quantifiers over the structure's
/// universe.
pub fn eval_fo(
    sig: &RelSignature,
    structure: &RelStructure,
    formula: &FoFormula,
    env: &mut Vec<(String, usize)>,
) -> Result<bool> {
    match formula {
        FoFormula::Atom(rel, vars) => {
            let ri = sig
                .iter()
                .position(|(n, _)| n == rel)
                .ok_or_else(|| Error::Config(format!("unknown relation `{rel}`")))?;
            let mut tuple = Vec::with_capacity(vars.len());
            for v in vars {
                let val = env
                    .iter()
                    .rev()
                    .find(|(name, _)| name == v)
                    .map(|(_, e)| *e)
                    .ok_or_else(|| Error::NonClosedFormula {
                        vars: vec![v.clone()],
                    })?;
                tuple.push(val);
            }
            if tuple.len() != sig[ri].1 {
                return Err(Error::Config(format!(
                    "relation `{rel}` used with arity {}",
                    tuple.len()
                )));
            }
            Ok(structure.interp[ri].contains(&tuple))
        }
        FoFormula::Not(f) => Ok(!eval_fo(sig, structure, f, env)?),
        FoFormula::And(l, r) => {
            Ok(eval_fo(sig, structure, l, env)? && eval_fo(sig, structure, r, env)?)
        }
        FoFormula::Or(l, r) => {
            Ok(eval_fo(sig, structure, l, env)? || eval_fo(sig, structure, r, env)?)
        }
        FoFormula::Implies(l, r) => {
            Ok(!eval_fo(sig, structure, l, env)? || eval_fo(sig, structure, r, env)?)
        }
        FoFormula::Forall(v, f) => {
            for e in 1..=structure.universe {
                env.push((v.clone(), e));
                let ok = eval_fo(sig, structure, f, env)?;
                env.pop();
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        FoFormula::Exists(v, f) => {
            for e in 1..=structure.universe {
                env.push((v.clone(), e));
                let ok = eval_fo(sig, structure, f, env)?;
                env.pop();
                if ok {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

const MAX_UNIVERSE: usize = 3;

/// First-order relational structures with all homomorphisms, as a
/// single-signature institution. The formula classes are exactly the
/// user-supplied fragment of closed formulas.
pub struct FoInstitution {
    pub sig: RelSignature,
    pub max_size: usize,
    structures: Vec<RelStructure>,
    ids: Vec<String>,
    fragment: Vec<FoFormula>,
    fragment_ids: Vec<FormulaClassId>,
    category: Arc<FinCategory>,
    by_id: HashMap<String, usize>,
}

pub const FO_SIGNATURE: &str = "fo";

impl FoInstitution {
    pub fn new(sig: RelSignature, max_size: usize, fragment: Vec<FoFormula>) -> Result<Self> {
        if max_size > MAX_UNIVERSE {
            return Err(Error::BoundTooLarge {
                requested: max_size,
                max: MAX_UNIVERSE,
            });
        }
        for f in &fragment {
            let fv = f.free_vars();
            if !fv.is_empty() {
                return Err(Error::NonClosedFormula {
                    vars: fv.into_iter().collect(),
                });
            }
        }
        let structures = enumerate_structures(&sig, max_size);
        let ids: Vec<String> = structures.iter().map(|s| s.id(&sig)).collect();
        let by_id: HashMap<String, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let category = Arc::new(build_hom_category(&structures, &ids));
        let fragment_ids: Vec<FormulaClassId> =
            fragment.iter().map(|f| f.to_string()).collect();
        {
            let mut seen = BTreeSet::new();
            for id in &fragment_ids {
                if !seen.insert(id.clone()) {
                    return Err(Error::DuplicateId(id.clone()));
                }
            }
        }
        Ok(FoInstitution {
            sig,
            max_size,
            structures,
            ids,
            fragment,
            fragment_ids,
            category,
            by_id,
        })
    }

    /// The standard desk instance: one binary relation E (directed graphs).
    pub fn graphs(max_size: usize, fragment: Vec<FoFormula>) -> Result<Self> {
        FoInstitution::new(vec![("E".to_string(), 2)], max_size, fragment)
    }

    pub fn structure(&self, id: &str) -> Result<&RelStructure> {
        self.by_id
            .get(id)
            .map(|&i| &self.structures[i])
            .ok_or_else(|| Error::UnknownModel(id.to_string()))
    }

    pub fn structure_ids(&self) -> &[String] {
        &self.ids
    }
}

fn enumerate_structures(sig: &RelSignature, max_size: usize) -> Vec<RelStructure> {
    let mut out = Vec::new();
    for k in 0..=max_size {
        // All tuple lists per relation, in lexicographic order.
        let tuple_spaces: Vec<Vec<Vec<usize>>> = sig
            .iter()
            .map(|(_, arity)| all_tuples(k, *arity))
            .collect();
        // Odometer over the interpretation masks of each relation.
        let sizes: Vec<usize> = tuple_spaces.iter().map(|t| 1usize << t.len()).collect();
        let total: usize = sizes.iter().product();
        for idx in 0..total {
            let mut rem = idx;
            let mut s = RelStructure::new(sig, k);
            for (ri, space) in tuple_spaces.iter().enumerate() {
                let mask = rem % sizes[ri];
                rem /= sizes[ri];
                for (ti, t) in space.iter().enumerate() {
                    if mask & (1 << ti) != 0 {
                        s.interp[ri].insert(t.clone());
                    }
                }
            }
            out.push(s);
        }
    }
    out
}

fn all_tuples(k: usize, arity: usize) -> Vec<Vec<usize>> {
    if arity == 0 {
        return vec![vec![]];
    }
    let mut out = vec![vec![]];
    for _ in 0..arity {
        let mut next = Vec::new();
        for prefix in &out {
            for e in 1..=k {
                let mut t = prefix.clone();
                t.push(e);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

fn hom_id(src: &str, map: &[usize], dst: &str) -> String {
    let imgs: String = map.iter().map(usize::to_string).collect();
    format!("{src}>{imgs}>{dst}")
}

fn build_hom_category(structures: &[RelStructure], ids: &[String]) -> FinCategory {
    let n = structures.len();
    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut mor_data: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut identities = vec![0usize; n];
    let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for map in enumerate_homomorphisms(&structures[a], &structures[b]) {
                let mi = morphisms.len();
                if a == b && map.iter().enumerate().all(|(i, &x)| x == i + 1) {
                    identities[a] = mi;
                }
                index.insert((a, b, map.clone()), mi);
                morphisms.push(Morphism {
                    id: hom_id(&ids[a], &map, &ids[b]),
                    dom: a,
                    cod: b,
                });
                mor_data.push((a, b, map));
            }
        }
    }
    let mut compose = HashMap::new();
    for (fi, (fa, fb, fmap)) in mor_data.iter().enumerate() {
        for (gi, (ga, gb, gmap)) in mor_data.iter().enumerate() {
            if fb != ga {
                continue;
            }
            let composite: Vec<usize> = fmap.iter().map(|&x| gmap[x - 1]).collect();
            let ci = index[&(*fa, *gb, composite)];
            compose.insert((gi, fi), ci);
        }
    }
    FinCategory::from_parts_unchecked(ids.to_vec(), morphisms, identities, compose)
}

impl Institution for FoInstitution {
    fn name(&self) -> String {
        let rels: Vec<String> = self
            .sig
            .iter()
            .map(|(n, a)| format!("{n}/{a}"))
            .collect();
        format!("fo({}; max_size={})", rels.join(","), self.max_size)
    }

    fn signatures(&self) -> Vec<SignatureId> {
        vec![FO_SIGNATURE.to_string()]
    }

    fn signature_morphisms(&self) -> Vec<SignatureMorphism> {
        vec![]
    }

    fn formula_classes(&self, sigma: &str) -> Result<Vec<FormulaClassId>> {
        self.check_sigma(sigma)?;
        Ok(self.fragment_ids.clone())
    }

    fn model_category(&self, sigma: &str) -> Result<Arc<FinCategory>> {
        self.check_sigma(sigma)?;
        Ok(self.category.clone())
    }

    fn satisfies(&self, sigma: &str, model: &str, class: &str) -> Result<bool> {
        self.check_sigma(sigma)?;
        let s = self.structure(model)?;
        let fi = self
            .fragment_ids
            .iter()
            .position(|c| c == class)
            .ok_or_else(|| Error::UnknownFormulaClass(class.to_string()))?;
        let mut env = Vec::new();
        eval_fo(&self.sig, s, &self.fragment[fi], &mut env)
    }

    fn translate_formula(&self, morphism: &str, _class: &str) -> Result<FormulaClassId> {
        Err(Error::UnknownMorphism(morphism.to_string()))
    }

    fn reduct_model(&self, morphism: &str, _model: &str) -> Result<String> {
        Err(Error::UnknownMorphism(morphism.to_string()))
    }

    fn describe_model(&self, _sigma: &str, model: &str) -> String {
        model.to_string()
    }
}

impl FoInstitution {
    fn check_sigma(&self, sigma: &str) -> Result<()> {
        if sigma != FO_SIGNATURE {
            return Err(Error::UnknownSignature(sigma.to_string()));
        }
        Ok(())
    }
}
