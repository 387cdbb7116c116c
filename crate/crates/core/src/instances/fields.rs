//! The affine site of finite fields: per characteristic p, the
//! compatible-embedding skeleton of fields F_{p^a} (a divisibility poset
//! of degrees) under a formal integer spectrum, with the units functor
//! F -> F^× as coefficients.
//!
//! Fields of characteristic p are modeled up to the canonical embedding
//! per degree pair, which is all the terminal-object and asphericity
//! structure needs; embedding automorphisms are not tracked.

use crate::error::{Error, Result};
use crate::fincat::{poset_from_pairs, slice_over, FinCategory, SliceResult};
use crate::simplicial::{explicit_system, pullback_system, CoefficientSystem, PresentedGroup, Variance};
use crate::homalg::IntMatrix;
use num_bigint::BigInt;
use num_traits::One;

pub const SPEC_Z: &str = "Spec(Z)";

const MAX_DEGREE: u32 = 6;

/// One characteristic: the ambient affine poset (fields of characteristic
/// p plus the integer spectrum), the restricted slice over the spectrum,
/// and the units coefficients on both.
pub struct PrimeComponent {
    pub p: u64,
    /// Degrees {1..N} under divisibility, arrows a -> b when a | b: the
    /// skeleton of fields of characteristic p under canonical embeddings.
    pub divisibility: FinCategory,
    /// The affine orientation: arrows F^b -> F^a when a | b, and one
    /// arrow from every field to Spec(Z).
    pub affine_ambient: FinCategory,
    /// K_p / Spec(Z): the slice over the spectrum restricted to field
    /// objects. Its terminal object is the degree-1 field.
    pub slice: SliceResult,
    /// Units on the ambient, contravariant: the group at F^a is
    /// Z/(p^a - 1), at Spec(Z) the units of the integers Z/2.
    pub units_ambient: CoefficientSystem,
    /// Units pulled back along the slice projection, ready for the
    /// cochain complex of the slice.
    pub units_on_slice: CoefficientSystem,
}

/// The whole site: per-prime components plus the mixed ambient containing
/// every characteristic at once.
pub struct FieldSite {
    pub primes: Vec<u64>,
    pub degree_bound: u32,
    pub components: Vec<PrimeComponent>,
    pub mixed_ambient: FinCategory,
    /// K / Spec(Z) over all characteristics: one connected component per
    /// prime.
    pub mixed_slice: SliceResult,
}

pub fn field_object(p: u64, degree: u32) -> String {
    format!("F{p}^{degree}")
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Z/(p^a - 1), the multiplicative group of F_{p^a} in additive form.
pub fn units_group(p: u64, degree: u32) -> PresentedGroup {
    let order = BigInt::from(p).pow(degree) - BigInt::one();
    PresentedGroup::cyclic(order)
}

/// The canonical embedding F_{p^a} -> F_{p^b} on units: multiplication by
/// (p^b - 1)/(p^a - 1) between the cyclic groups.
fn units_embedding_matrix(p: u64, a: u32, b: u32) -> IntMatrix {
    let src = units_group(p, a);
    let dst = units_group(p, b);
    let mut m = IntMatrix::zero(dst.generators(), src.generators());
    if src.generators() == 1 && dst.generators() == 1 {
        let pa = BigInt::from(p).pow(a) - BigInt::one();
        let pb = BigInt::from(p).pow(b) - BigInt::one();
        m.set(0, 0, pb / pa);
    }
    m
}

/// Z^× = {±1} -> F^×: the image of -1, which is the unique order-2
/// element for odd residue order and vanishes when the order is odd.
fn integer_units_matrix(p: u64, degree: u32) -> IntMatrix {
    let dst = units_group(p, degree);
    let mut m = IntMatrix::zero(dst.generators(), 1);
    if dst.generators() == 1 {
        let order = BigInt::from(p).pow(degree) - BigInt::one();
        if (&order % BigInt::from(2)).is_one() {
            // Odd order: -1 = 1 in the field, zero map.
        } else {
            m.set(0, 0, order / BigInt::from(2));
        }
    }
    m
}

fn prime_component(p: u64, n: u32) -> Result<PrimeComponent> {
    let degrees: Vec<u32> = (1..=n).collect();
    let field_ids: Vec<String> = degrees.iter().map(|&a| field_object(p, a)).collect();

    let div_pairs: Vec<(String, String)> = divisibility_pairs(p, &degrees);
    let divisibility = poset_from_pairs(&field_ids, &div_pairs)?;

    let mut affine_elements = field_ids.clone();
    affine_elements.push(SPEC_Z.to_string());
    let mut affine_pairs: Vec<(String, String)> = div_pairs
        .iter()
        .map(|(a, b)| (b.clone(), a.clone()))
        .collect();
    for f in &field_ids {
        affine_pairs.push((f.clone(), SPEC_Z.to_string()));
    }
    let affine_ambient = poset_from_pairs(&affine_elements, &affine_pairs)?;

    let slice = slice_over(&affine_ambient, &field_ids, SPEC_Z)?;

    let units_ambient = units_system_on_affine(p, &affine_ambient)?;
    let units_on_slice = pullback_system(&units_ambient, &slice.projection)?;

    Ok(PrimeComponent {
        p,
        divisibility,
        affine_ambient,
        slice,
        units_ambient,
        units_on_slice,
    })
}

fn divisibility_pairs(p: u64, degrees: &[u32]) -> Vec<(String, String)> {
    let mut pairs = Vec::new();
    for &a in degrees {
        for &b in degrees {
            if a != b && b % a == 0 {
                pairs.push((field_object(p, a), field_object(p, b)));
            }
        }
    }
    pairs
}

fn parse_degree(p: u64, id: &str) -> Option<u32> {
    id.strip_prefix(&format!("F{p}^"))?.parse().ok()
}

/// The contravariant units system on the affine poset of one
/// characteristic.
fn units_system_on_affine(p: u64, affine: &FinCategory) -> Result<CoefficientSystem> {
    let groups: Vec<PresentedGroup> = affine
        .objects()
        .iter()
        .map(|o| {
            if o == SPEC_Z {
                PresentedGroup::cyclic(BigInt::from(2))
            } else {
                units_group(p, parse_degree(p, o).expect("field object id"))
            }
        })
        .collect();
    let maps: Vec<IntMatrix> = affine
        .morphisms()
        .iter()
        .map(|m| {
            let dom_id = affine.object_id(m.dom);
            let cod_id = affine.object_id(m.cod);
            if m.dom == m.cod {
                IntMatrix::identity(groups[m.dom].generators())
            } else if cod_id == SPEC_Z {
                // Contravariant: T(Spec(Z)) -> T(F^a).
                integer_units_matrix(p, parse_degree(p, dom_id).unwrap())
            } else {
                // Arrow F^b -> F^a (a | b); contravariant map is the
                // embedding on units T(F^a) -> T(F^b).
                let b = parse_degree(p, dom_id).unwrap();
                let a = parse_degree(p, cod_id).unwrap();
                units_embedding_matrix(p, a, b)
            }
        })
        .collect();
    explicit_system(affine, Variance::Contravariant, groups, maps)
}

/// Build the site for the given characteristics and degree bound.
pub fn build_field_site(primes: &[u64], degree_bound: u32) -> Result<FieldSite> {
    if primes.is_empty() {
        return Err(Error::Config("at least one prime is required".into()));
    }
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
    }
    if degree_bound == 0 || degree_bound > MAX_DEGREE {
        return Err(Error::DegreeBoundTooLarge {
            requested: degree_bound,
            max: MAX_DEGREE,
        });
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let degrees: Vec<u32> = (1..=degree_bound).collect();
    let components: Vec<PrimeComponent> = sorted
        .iter()
        .map(|&p| prime_component(p, degree_bound))
        .collect::<Result<_>>()?;

    // The mixed ambient: all fields of all listed characteristics over a
    // single integer spectrum.
    let mut elements: Vec<String> = Vec::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for &p in &sorted {
        for &a in &degrees {
            elements.push(field_object(p, a));
        }
        pairs.extend(
            divisibility_pairs(p, &degrees)
                .into_iter()
                .map(|(x, y)| (y, x)),
        );
        for &a in &degrees {
            pairs.push((field_object(p, a), SPEC_Z.to_string()));
        }
    }
    let field_ids = elements.clone();
    elements.push(SPEC_Z.to_string());
    let mixed_ambient = poset_from_pairs(&elements, &pairs)?;
    let mixed_slice = slice_over(&mixed_ambient, &field_ids, SPEC_Z)?;

    Ok(FieldSite {
        primes: sorted,
        degree_bound,
        components,
        mixed_ambient,
        mixed_slice,
    })
}
