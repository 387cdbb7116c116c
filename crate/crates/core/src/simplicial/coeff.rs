//! Finitely generated abelian groups given by presentations, and functor
//! coefficients on a finite category.

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FunctorData};
use crate::homalg::IntMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A finitely generated abelian group in invariant-factor form:
/// Z^free_rank ⊕ Z/m_1 ⊕ ... ⊕ Z/m_k with 2 <= m_1 | m_2 | ... | m_k.
/// Generators are ordered free-first, then torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl PresentedGroup {
    pub fn free(rank: usize) -> Self {
        PresentedGroup {
            free_rank: rank,
            torsion: vec![],
        }
    }

    pub fn z() -> Self {
        PresentedGroup::free(1)
    }

    pub fn trivial() -> Self {
        PresentedGroup::free(0)
    }

    /// Cyclic group of order m (trivial when m = 1).
    pub fn cyclic(m: BigInt) -> Self {
        assert!(m.is_positive(), "cyclic order must be positive");
        if m.is_one() {
            PresentedGroup::trivial()
        } else {
            PresentedGroup {
                free_rank: 0,
                torsion: vec![m],
            }
        }
    }

    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for t in &torsion {
            if t < &BigInt::from(2) {
                return Err(Error::Config(format!("torsion factor {t} below 2")));
            }
        }
        for w in torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::Config(
                    "torsion factors must form a divisibility chain".into(),
                ));
            }
        }
        Ok(PresentedGroup { free_rank, torsion })
    }

    pub fn generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators() == 0
    }

    /// Relation columns: one column m_j * e_{free_rank + j} per torsion
    /// generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let g = self.generators();
        let mut r = IntMatrix::zero(g, self.torsion.len());
        for (j, m) in self.torsion.iter().enumerate() {
            r.set(self.free_rank + j, j, m.clone());
        }
        r
    }

    /// Is `vec` zero modulo the relations?
    pub fn annihilates(&self, vec: &[BigInt]) -> bool {
        assert_eq!(vec.len(), self.generators());
        for i in 0..self.free_rank {
            if !vec[i].is_zero() {
                return false;
            }
        }
        for (j, m) in self.torsion.iter().enumerate() {
            if !(&vec[self.free_rank + j] % m).is_zero() {
                return false;
            }
        }
        true
    }

    /// Does `map` (a matrix on generators, target rows) send the relations
    /// of `self` into those of `target`, i.e. define a homomorphism?
    pub fn map_well_defined(&self, target: &PresentedGroup, map: &IntMatrix) -> bool {
        if map.rows() != target.generators() || map.cols() != self.generators() {
            return false;
        }
        for (j, m) in self.torsion.iter().enumerate() {
            let col = map.column(self.free_rank + j);
            let scaled: Vec<BigInt> = col.iter().map(|v| v * m).collect();
            if !target.annihilates(&scaled) {
                return false;
            }
        }
        true
    }

    /// Are two generator matrices equal as maps into `target`?
    pub fn maps_equal(target: &PresentedGroup, a: &IntMatrix, b: &IntMatrix) -> bool {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return false;
        }
        for j in 0..a.cols() {
            let diff: Vec<BigInt> = (0..a.rows()).map(|i| a.get(i, j) - b.get(i, j)).collect();
            if !target.annihilates(&diff) {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn as_str(self) -> &'static str {
        match self {
            Variance::Covariant => "covariant",
            Variance::Contravariant => "contravariant",
        }
    }
}

/// A functor from a finite category to finitely generated abelian groups:
/// a group per object and a generator matrix per morphism, compatible with
/// the presentations. For a covariant system `map_at(f)` goes
/// T(dom f) -> T(cod f); contravariant reverses.
#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    pub base: FinCategory,
    pub variance: Variance,
    groups: Vec<PresentedGroup>,
    maps: Vec<IntMatrix>,
}

impl CoefficientSystem {
    pub fn group_at(&self, obj: usize) -> &PresentedGroup {
        &self.groups[obj]
    }

    pub fn map_at(&self, mor: usize) -> &IntMatrix {
        &self.maps[mor]
    }

    /// Verify identity and composition functoriality and well-definedness
    /// on presentations.
    pub fn check(&self) -> Result<()> {
        let cat = &self.base;
        for (mi, m) in cat.morphisms().iter().enumerate() {
            let (src, dst) = match self.variance {
                Variance::Covariant => (m.dom, m.cod),
                Variance::Contravariant => (m.cod, m.dom),
            };
            let map = &self.maps[mi];
            if map.cols() != self.groups[src].generators()
                || map.rows() != self.groups[dst].generators()
            {
                return Err(Error::RelationViolation {
                    morphism: m.id.clone(),
                });
            }
            if !self.groups[src].map_well_defined(&self.groups[dst], map) {
                return Err(Error::RelationViolation {
                    morphism: m.id.clone(),
                });
            }
        }
        for o in 0..cat.object_count() {
            let e = cat.identity_of(o);
            let expect = IntMatrix::identity(self.groups[o].generators());
            if !PresentedGroup::maps_equal(&self.groups[o], &self.maps[e], &expect) {
                return Err(Error::FunctorialityViolation {
                    g: cat.morphism(e).id.clone(),
                    f: cat.morphism(e).id.clone(),
                });
            }
        }
        for g in 0..cat.morphism_count() {
            for f in 0..cat.morphism_count() {
                let Some(gf) = cat.try_compose_idx(g, f) else {
                    continue;
                };
                let (lhs, target_obj) = match self.variance {
                    Variance::Covariant => (
                        self.maps[g].mul(&self.maps[f]),
                        cat.morphism(g).cod,
                    ),
                    Variance::Contravariant => (
                        self.maps[f].mul(&self.maps[g]),
                        cat.morphism(f).dom,
                    ),
                };
                if !PresentedGroup::maps_equal(&self.groups[target_obj], &lhs, &self.maps[gf]) {
                    return Err(Error::FunctorialityViolation {
                        g: cat.morphism(g).id.clone(),
                        f: cat.morphism(f).id.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The constant system: every object carries `group`, every morphism the
/// identity matrix.
pub fn constant_system(base: &FinCategory, group: PresentedGroup, variance: Variance) -> CoefficientSystem {
    let g = group.generators();
    let groups = vec![group; base.object_count()];
    let maps = vec![IntMatrix::identity(g); base.morphism_count()];
    CoefficientSystem {
        base: base.clone(),
        variance,
        groups,
        maps,
    }
}

/// Constant Z, the default coefficient choice.
pub fn constant_z(base: &FinCategory, variance: Variance) -> CoefficientSystem {
    constant_system(base, PresentedGroup::z(), variance)
}

/// Pull a system on the target of `u` back along `u`: group_at(a) =
/// T(u(a)), map_at(f) = T(u(f)).
pub fn pullback_system(system: &CoefficientSystem, u: &FunctorData) -> Result<CoefficientSystem> {
    if u.target.objects() != system.base.objects()
        || u.target.morphism_count() != system.base.morphism_count()
    {
        return Err(Error::Config(
            "pullback functor target does not match system base".into(),
        ));
    }
    let groups = (0..u.source.object_count())
        .map(|a| system.groups[u.object_map[a]].clone())
        .collect();
    let maps = (0..u.source.morphism_count())
        .map(|f| system.maps[u.morphism_map[f]].clone())
        .collect();
    let out = CoefficientSystem {
        base: u.source.clone(),
        variance: system.variance,
        groups,
        maps,
    };
    debug_assert!(out.check().is_ok());
    Ok(out)
}

/// Build from explicit per-object groups and per-morphism matrices;
/// functoriality is verified and violations name the offending pair.
pub fn explicit_system(
    base: &FinCategory,
    variance: Variance,
    groups: Vec<PresentedGroup>,
    maps: Vec<IntMatrix>,
) -> Result<CoefficientSystem> {
    if groups.len() != base.object_count() || maps.len() != base.morphism_count() {
        return Err(Error::Config(
            "explicit system tables must match object/morphism counts".into(),
        ));
    }
    let sys = CoefficientSystem {
        base: base.clone(),
        variance,
        groups,
        maps,
    };
    sys.check()?;
    Ok(sys)
}
