//! Classical propositional logic as an institution: signatures are finite
//! atom sets ordered by inclusion, models are valuations (a discrete
//! category), and formula classes are truth-table classes.

use crate::error::{Error, Result};
use crate::fincat::{discrete, FinCategory};
use crate::institution::{FormulaClassId, Institution, SignatureId, SignatureMorphism};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

/// Abstract syntax over numbered atoms and {not, and, or, implies}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropFormula {
    Atom(usize),
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    Implies(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn free_vars(&self) -> BTreeSet<usize> {
        match self {
            PropFormula::Atom(p) => [*p].into_iter().collect(),
            PropFormula::Not(inner) => inner.free_vars(),
            PropFormula::And(l, r) | PropFormula::Or(l, r) | PropFormula::Implies(l, r) => {
                let mut s = l.free_vars();
                s.extend(r.free_vars());
                s
            }
        }
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropFormula::Atom(p) => write!(f, "{p}"),
            PropFormula::Not(inner) => write!(f, "~{inner}"),
            PropFormula::And(l, r) => write!(f, "[{l} & {r}]"),
            PropFormula::Or(l, r) => write!(f, "[{l} | {r}]"),
            PropFormula::Implies(l, r) => write!(f, "[{l} -> {r}]"),
        }
    }
}

/// A total assignment of the atoms of a signature.
pub type Valuation = BTreeMap<usize, bool>;

/// Classical truth-table evaluation; every free atom must be bound.
pub fn eval_formula(valuation: &Valuation, formula: &PropFormula) -> Result<bool> {
    match formula {
        PropFormula::Atom(p) => valuation.get(p).copied().ok_or(Error::UnboundAtom(*p)),
        PropFormula::Not(inner) => Ok(!eval_formula(valuation, inner)?),
        PropFormula::And(l, r) => Ok(eval_formula(valuation, l)? && eval_formula(valuation, r)?),
        PropFormula::Or(l, r) => Ok(eval_formula(valuation, l)? || eval_formula(valuation, r)?),
        PropFormula::Implies(l, r) => {
            Ok(!eval_formula(valuation, l)? || eval_formula(valuation, r)?)
        }
    }
}

/// Recursive-descent parser for the bracketed grammar
/// `formula := atom | "~" formula | "[" formula op formula "]"` with
/// `op := "&" | "|" | "->"` and decimal atoms; whitespace insignificant.
/// Error offsets are 1-based character positions.
pub fn parse_formula(text: &str) -> Result<PropFormula> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let formula = parse_expr(&chars, &mut pos)?;
    skip_ws(&chars, &mut pos);
    if pos < chars.len() {
        return Err(Error::Syntax {
            offset: pos + 1,
            message: format!("unexpected `{}` after formula", chars[pos]),
        });
    }
    Ok(formula)
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_expr(chars: &[char], pos: &mut usize) -> Result<PropFormula> {
    skip_ws(chars, pos);
    match chars.get(*pos) {
        None => Err(Error::Syntax {
            offset: *pos + 1,
            message: "unexpected end of input".into(),
        }),
        Some('~') => {
            *pos += 1;
            Ok(PropFormula::Not(Box::new(parse_expr(chars, pos)?)))
        }
        Some('[') => {
            *pos += 1;
            let left = parse_expr(chars, pos)?;
            skip_ws(chars, pos);
            let op = match chars.get(*pos) {
                Some('&') => {
                    *pos += 1;
                    '&'
                }
                Some('|') => {
                    *pos += 1;
                    '|'
                }
                Some('-') => {
                    if chars.get(*pos + 1) == Some(&'>') {
                        *pos += 2;
                        '>'
                    } else {
                        return Err(Error::Syntax {
                            offset: *pos + 1,
                            message: "expected `->`".into(),
                        });
                    }
                }
                other => {
                    return Err(Error::Syntax {
                        offset: *pos + 1,
                        message: format!(
                            "expected operator, found {}",
                            other.map_or("end of input".to_string(), |c| format!("`{c}`"))
                        ),
                    })
                }
            };
            let right = parse_expr(chars, pos)?;
            skip_ws(chars, pos);
            if chars.get(*pos) != Some(&']') {
                return Err(Error::Syntax {
                    offset: *pos + 1,
                    message: "expected `]`".into(),
                });
            }
            *pos += 1;
            Ok(match op {
                '&' => PropFormula::And(Box::new(left), Box::new(right)),
                '|' => PropFormula::Or(Box::new(left), Box::new(right)),
                _ => PropFormula::Implies(Box::new(left), Box::new(right)),
            })
        }
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while chars.get(*pos).is_some_and(char::is_ascii_digit) {
                *pos += 1;
            }
            let text: String = chars[start..*pos].iter().collect();
            let atom = text.parse::<usize>().map_err(|_| Error::Syntax {
                offset: start + 1,
                message: "atom out of range".into(),
            })?;
            Ok(PropFormula::Atom(atom))
        }
        Some(c) => Err(Error::Syntax {
            offset: *pos + 1,
            message: format!("unexpected `{c}`"),
        }),
    }
}

const MAX_ATOMS: usize = 4;

/// Classical propositional logic over at most `max_atoms` atoms.
/// Signatures are the subsets of {0..max_atoms-1}; the model category of a
/// signature is the discrete category of its valuations; formula classes
/// are the 2^(2^|Σ|) truth tables.
pub struct PropInstitution {
    max_atoms: usize,
    signatures: Vec<SignatureId>,
    atoms_of: HashMap<SignatureId, Vec<usize>>,
    categories: HashMap<SignatureId, Arc<FinCategory>>,
    /// Deliberate satisfaction fault for exercising the axiom checker:
    /// (signature, class) pairs whose verdicts are flipped.
    fault: Option<(SignatureId, FormulaClassId)>,
}

fn sig_id(atoms: &[usize]) -> SignatureId {
    let inner: Vec<String> = atoms.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn valuation_id(bits: &[bool]) -> String {
    let mut s = String::from("v");
    for &b in bits {
        s.push(if b { '1' } else { '0' });
    }
    s
}

impl PropInstitution {
    pub fn new(max_atoms: usize) -> Result<Self> {
        Self::build(max_atoms, false)
    }

    /// A variant whose satisfaction relation is flipped on the negation
    /// class of the full signature; the axiom checker must report an (I1)
    /// counterexample against it.
    pub fn faulty(max_atoms: usize) -> Result<Self> {
        Self::build(max_atoms, true)
    }

    fn build(max_atoms: usize, faulty: bool) -> Result<Self> {
        if max_atoms == 0 || max_atoms > MAX_ATOMS {
            return Err(Error::BoundTooLarge {
                requested: max_atoms,
                max: MAX_ATOMS,
            });
        }
        let mut signatures = Vec::new();
        let mut atoms_of = HashMap::new();
        let mut categories = HashMap::new();
        for mask in 0u32..(1 << max_atoms) {
            let atoms: Vec<usize> = (0..max_atoms).filter(|i| mask & (1 << i) != 0).collect();
            let id = sig_id(&atoms);
            let k = atoms.len();
            let names: Vec<String> = (0..1usize << k)
                .map(|m| {
                    let bits: Vec<bool> = (0..k).map(|i| (m >> (k - 1 - i)) & 1 == 1).collect();
                    valuation_id(&bits)
                })
                .collect();
            categories.insert(id.clone(), Arc::new(discrete(&names)));
            atoms_of.insert(id.clone(), atoms);
            signatures.push(id);
        }
        let fault = if faulty {
            // Flip the class of ~(least atom) in the full signature.
            let atoms: Vec<usize> = (0..max_atoms).collect();
            let full = sig_id(&atoms);
            let table = table_of_formula(&atoms, &PropFormula::Not(Box::new(PropFormula::Atom(0))))?;
            Some((full, table))
        } else {
            None
        };
        Ok(PropInstitution {
            max_atoms,
            signatures,
            atoms_of,
            categories,
            fault,
        })
    }

    pub fn max_atoms(&self) -> usize {
        self.max_atoms
    }

    /// The full signature {0..max_atoms-1}.
    pub fn full_signature(&self) -> SignatureId {
        self.signatures.last().cloned().unwrap()
    }

    pub fn signature_of_atoms(&self, atoms: &[usize]) -> Result<SignatureId> {
        let mut sorted = atoms.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let id = sig_id(&sorted);
        if !self.atoms_of.contains_key(&id) {
            return Err(Error::UnknownSignature(id));
        }
        Ok(id)
    }

    fn atoms(&self, sigma: &str) -> Result<&[usize]> {
        self.atoms_of
            .get(sigma)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownSignature(sigma.to_string()))
    }

    /// Valuation for a model id over a signature.
    pub fn valuation_of(&self, sigma: &str, model: &str) -> Result<Valuation> {
        let atoms = self.atoms(sigma)?;
        let bits = model
            .strip_prefix('v')
            .ok_or_else(|| Error::UnknownModel(model.to_string()))?;
        if bits.len() != atoms.len() || !bits.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::UnknownModel(model.to_string()));
        }
        Ok(atoms
            .iter()
            .zip(bits.chars())
            .map(|(&a, c)| (a, c == '1'))
            .collect())
    }

    /// Classify a raw formula into its truth-table class over a signature.
    pub fn classify(&self, sigma: &str, formula: &PropFormula) -> Result<FormulaClassId> {
        let atoms = self.atoms(sigma)?;
        for v in formula.free_vars() {
            if !atoms.contains(&v) {
                return Err(Error::UnboundAtom(v));
            }
        }
        table_of_formula(atoms, formula)
    }

    /// A canonical representative formula of a class: disjunctive normal
    /// form over the satisfying valuations; None over the empty signature
    /// (whose two classes have no representative in the grammar).
    pub fn representative(&self, sigma: &str, class: &str) -> Result<Option<PropFormula>> {
        let atoms = self.atoms(sigma)?;
        let bits = class_bits(class)?;
        if bits.len() != 1 << atoms.len() {
            return Err(Error::UnknownFormulaClass(class.to_string()));
        }
        if atoms.is_empty() {
            return Ok(None);
        }
        let a0 = PropFormula::Atom(atoms[0]);
        if bits.iter().all(|&b| !b) {
            return Ok(Some(PropFormula::And(
                Box::new(a0.clone()),
                Box::new(PropFormula::Not(Box::new(a0))),
            )));
        }
        if bits.iter().all(|&b| b) {
            return Ok(Some(PropFormula::Or(
                Box::new(a0.clone()),
                Box::new(PropFormula::Not(Box::new(a0))),
            )));
        }
        let k = atoms.len();
        let mut disjuncts: Vec<PropFormula> = Vec::new();
        for (m, &b) in bits.iter().enumerate() {
            if !b {
                continue;
            }
            let mut literals: Vec<PropFormula> = Vec::new();
            for (i, &atom) in atoms.iter().enumerate() {
                let value = (m >> (k - 1 - i)) & 1 == 1;
                let lit = if value {
                    PropFormula::Atom(atom)
                } else {
                    PropFormula::Not(Box::new(PropFormula::Atom(atom)))
                };
                literals.push(lit);
            }
            let conj = literals
                .into_iter()
                .reduce(|l, r| PropFormula::And(Box::new(l), Box::new(r)))
                .unwrap();
            disjuncts.push(conj);
        }
        Ok(disjuncts
            .into_iter()
            .reduce(|l, r| PropFormula::Or(Box::new(l), Box::new(r))))
    }
}

/// Truth table of a formula over the valuation enumeration of `atoms`,
/// rendered as a class id.
fn table_of_formula(atoms: &[usize], formula: &PropFormula) -> Result<FormulaClassId> {
    let k = atoms.len();
    let mut s = String::from("c");
    for m in 0..1usize << k {
        let valuation: Valuation = atoms
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, (m >> (k - 1 - i)) & 1 == 1))
            .collect();
        s.push(if eval_formula(&valuation, formula)? {
            '1'
        } else {
            '0'
        });
    }
    Ok(s)
}

fn class_bits(class: &str) -> Result<Vec<bool>> {
    let bits = class
        .strip_prefix('c')
        .ok_or_else(|| Error::UnknownFormulaClass(class.to_string()))?;
    if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::UnknownFormulaClass(class.to_string()));
    }
    Ok(bits.chars().map(|c| c == '1').collect())
}

impl Institution for PropInstitution {
    fn name(&self) -> String {
        format!("prop(max_atoms={})", self.max_atoms)
    }

    fn signatures(&self) -> Vec<SignatureId> {
        self.signatures.clone()
    }

    fn signature_morphisms(&self) -> Vec<SignatureMorphism> {
        let mut out = Vec::new();
        for a in &self.signatures {
            for b in &self.signatures {
                let sa = &self.atoms_of[a];
                let sb = &self.atoms_of[b];
                if sa.iter().all(|x| sb.contains(x)) {
                    out.push(SignatureMorphism {
                        id: format!("{a}->{b}"),
                        dom: a.clone(),
                        cod: b.clone(),
                    });
                }
            }
        }
        out
    }

    fn formula_classes(&self, sigma: &str) -> Result<Vec<FormulaClassId>> {
        let k = self.atoms(sigma)?.len();
        let rows = 1usize << k;
        Ok((0..1usize << rows)
            .map(|mask| {
                let mut s = String::from("c");
                for j in 0..rows {
                    s.push(if (mask >> (rows - 1 - j)) & 1 == 1 {
                        '1'
                    } else {
                        '0'
                    });
                }
                s
            })
            .collect())
    }

    fn model_category(&self, sigma: &str) -> Result<Arc<FinCategory>> {
        self.categories
            .get(sigma)
            .cloned()
            .ok_or_else(|| Error::UnknownSignature(sigma.to_string()))
    }

    fn satisfies(&self, sigma: &str, model: &str, class: &str) -> Result<bool> {
        let atoms = self.atoms(sigma)?;
        let bits = class_bits(class)?;
        if bits.len() != 1 << atoms.len() {
            return Err(Error::UnknownFormulaClass(class.to_string()));
        }
        let model_bits = model
            .strip_prefix('v')
            .filter(|b| b.len() == atoms.len() && b.chars().all(|c| c == '0' || c == '1'))
            .ok_or_else(|| Error::UnknownModel(model.to_string()))?;
        let index = model_bits
            .chars()
            .fold(0usize, |acc, c| (acc << 1) | usize::from(c == '1'));
        let mut value = bits[index];
        if let Some((fs, fc)) = &self.fault {
            if fs == sigma && fc == class {
                value = !value;
            }
        }
        Ok(value)
    }

    fn translate_formula(&self, morphism: &str, class: &str) -> Result<FormulaClassId> {
        let (dom, cod) = split_morphism(morphism)?;
        let da = self.atoms(&dom)?.to_vec();
        let ca = self.atoms(&cod)?.to_vec();
        let bits = class_bits(class)?;
        if bits.len() != 1 << da.len() {
            return Err(Error::UnknownFormulaClass(class.to_string()));
        }
        let k = ca.len();
        let mut s = String::from("c");
        for m in 0..1usize << k {
            // Restrict the codomain valuation to the domain atoms.
            let mut sub = 0usize;
            for (di, datom) in da.iter().enumerate() {
                let ci = ca.iter().position(|x| x == datom).unwrap();
                let bit = (m >> (k - 1 - ci)) & 1;
                sub |= bit << (da.len() - 1 - di);
            }
            s.push(if bits[sub] { '1' } else { '0' });
        }
        Ok(s)
    }

    fn reduct_model(&self, morphism: &str, model: &str) -> Result<String> {
        let (dom, cod) = split_morphism(morphism)?;
        let valuation = self.valuation_of(&cod, model)?;
        let da = self.atoms(&dom)?;
        let bits: Vec<bool> = da.iter().map(|a| valuation[a]).collect();
        Ok(valuation_id(&bits))
    }

    fn describe_model(&self, sigma: &str, model: &str) -> String {
        match self.valuation_of(sigma, model) {
            Ok(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .map(|(a, b)| format!("{a}={}", u8::from(*b)))
                    .collect();
                format!("{{{}}}", parts.join(","))
            }
            Err(_) => model.to_string(),
        }
    }

    fn describe_class(&self, sigma: &str, class: &str) -> String {
        match self.representative(sigma, class) {
            Ok(Some(f)) => f.to_string(),
            Ok(None) => {
                if class.ends_with('1') {
                    "true".to_string()
                } else {
                    "false".to_string()
                }
            }
            Err(_) => class.to_string(),
        }
    }
}

fn split_morphism(id: &str) -> Result<(SignatureId, SignatureId)> {
    // Signature ids are brace-delimited, so the separator is unambiguous.
    let idx = id
        .find("}->{")
        .ok_or_else(|| Error::UnknownMorphism(id.to_string()))?;
    Ok((id[..idx + 1].to_string(), id[idx + 3..].to_string()))
}
