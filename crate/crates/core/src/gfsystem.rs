//! The seven-class vertex system for the {[6,8,8],3} tessellation.
//!
//! Vertices of the degree-3 tessellation with one hexagon and two octagons
//! at each vertex are sorted into seven kinds when grown outward from the
//! central hexagon:
//!
//! * `G`: the six vertices of the central hexagon.
//! * `A`, `B`: one parent and two children; the face between the two child
//!   edges is a hexagon (`A`) or an octagon (`B`).
//! * `C`, `D`: two parents and one child; the face between the two parent
//!   edges is a hexagon (`C`) or an octagon (`D`).
//! * `E`, `F`: one parent, one sibling and one child; the pair sits on top of a
//!   hexagon (`E`) or an octagon (`F`).
//!
//! The generating function of each kind is either given in closed form, is a
//! shift `z^k X(z)` of another kind, or is an unknown determined by a linear
//! equation. A [`ClassSystem`] stores all three as data and [`solve`] reduces
//! them to a linear system over Q(z).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyrat::{solve_linear_system, PolyError, Polynomial, RationalFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassName {
    G,
    A,
    B,
    C,
    D,
    E,
    F,
}

impl ClassName {
    pub const ALL: [ClassName; 7] = [
        ClassName::G,
        ClassName::A,
        ClassName::B,
        ClassName::C,
        ClassName::D,
        ClassName::E,
        ClassName::F,
    ];
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// How a class's generating function is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DefinitionKind {
    ClosedForm,
    ShiftOfOtherClass,
    UnknownInLinearSystem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub name: ClassName,
    pub definition: DefinitionKind,
}

/// `coeff(z) * X(z)` on the right-hand side of an equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Polynomial,
    pub class: ClassName,
}

impl Term {
    pub fn new(coeff: Polynomial, class: ClassName) -> Self {
        Term { coeff, class }
    }
}

/// `X(z) = z^power * source(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRule {
    pub source: ClassName,
    pub power: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSystem {
    pub closed_forms: BTreeMap<ClassName, RationalFunction>,
    pub shift_rules: BTreeMap<ClassName, ShiftRule>,
    /// For each unknown `U`, the terms of `U(z) = sum coeff * X(z)`.
    pub linear_equations: BTreeMap<ClassName, Vec<Term>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolvedSystem {
    pub per_class: BTreeMap<ClassName, RationalFunction>,
    pub total: RationalFunction,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("class {0} is referenced but never declared")]
    UndeclaredClass(ClassName),
    #[error("class {0} is declared more than once")]
    DuplicateDeclaration(ClassName),
    #[error("shift rules form a cycle through class {0}")]
    CyclicShift(ClassName),
    #[error("the class equations are singular over Q(z)")]
    Singular,
    #[error("coefficient {index} of class {class} is not an integer")]
    NonIntegerCoefficient { class: ClassName, index: usize },
}

fn z_poly(coeffs: &[i64]) -> Polynomial {
    Polynomial::from_i64s(coeffs)
}

/// The system for {[6,8,8],3} seeded at the central hexagon.
///
/// The `B` equation keeps both `+zD` and `-D`, exactly as derived from the
/// child-counting rules; they merge during canonicalisation.
pub fn default_escher_system() -> ClassSystem {
    use ClassName::*;
    let minus_one = || z_poly(&[-1]);
    let z = || z_poly(&[0, 1]);

    let mut closed_forms = BTreeMap::new();
    closed_forms.insert(G, RationalFunction::constant(6));
    let one_minus_z5 = z_poly(&[1, 0, 0, 0, 0, -1]);
    closed_forms.insert(E, RationalFunction::new(Polynomial::monomial(12, 5), one_minus_z5.clone()).unwrap());
    closed_forms.insert(F, RationalFunction::new(Polynomial::monomial(12, 3), one_minus_z5).unwrap());

    let mut shift_rules = BTreeMap::new();
    shift_rules.insert(C, ShiftRule { source: A, power: 3 });
    shift_rules.insert(D, ShiftRule { source: B, power: 4 });

    let mut linear_equations = BTreeMap::new();
    linear_equations.insert(
        A,
        vec![
            Term::new(z(), B),
            Term::new(z(), C),
            Term::new(minus_one(), D),
            Term::new(z(), E),
            Term::new(minus_one(), F),
            Term::new(z(), G),
        ],
    );
    linear_equations.insert(
        B,
        vec![
            Term::new(z_poly(&[0, 2]), A),
            Term::new(z(), B),
            Term::new(z_poly(&[-2]), C),
            Term::new(z(), D),
            Term::new(minus_one(), D),
            Term::new(minus_one(), E),
            Term::new(z(), F),
        ],
    );

    ClassSystem { closed_forms, shift_rules, linear_equations }
}

impl ClassSystem {
    pub fn classes(&self) -> Vec<VertexClass> {
        let mut out: Vec<VertexClass> = Vec::new();
        for name in ClassName::ALL {
            let definition = if self.closed_forms.contains_key(&name) {
                DefinitionKind::ClosedForm
            } else if self.shift_rules.contains_key(&name) {
                DefinitionKind::ShiftOfOtherClass
            } else if self.linear_equations.contains_key(&name) {
                DefinitionKind::UnknownInLinearSystem
            } else {
                continue;
            };
            out.push(VertexClass { name, definition });
        }
        out
    }

    fn is_declared(&self, c: ClassName) -> bool {
        self.closed_forms.contains_key(&c)
            || self.shift_rules.contains_key(&c)
            || self.linear_equations.contains_key(&c)
    }

    fn check_declarations(&self) -> Result<(), GfError> {
        for name in ClassName::ALL {
            let n = usize::from(self.closed_forms.contains_key(&name))
                + usize::from(self.shift_rules.contains_key(&name))
                + usize::from(self.linear_equations.contains_key(&name));
            if n > 1 {
                return Err(GfError::DuplicateDeclaration(name));
            }
        }
        let referenced = self
            .shift_rules
            .values()
            .map(|r| r.source)
            .chain(self.linear_equations.values().flatten().map(|t| t.class));
        for c in referenced {
            if !self.is_declared(c) {
                return Err(GfError::UndeclaredClass(c));
            }
        }
        Ok(())
    }
}

/// A class expressed through the unknowns: `known + multiplier * unknown`.
enum Resolved {
    Known(RationalFunction),
    Linear { unknown: ClassName, power: usize },
}

fn resolve(system: &ClassSystem, class: ClassName) -> Result<Resolved, GfError> {
    let mut power = 0usize;
    let mut current = class;
    for _ in 0..=ClassName::ALL.len() {
        if let Some(r) = system.closed_forms.get(&current) {
            return Ok(Resolved::Known(r.shift(power)));
        }
        if system.linear_equations.contains_key(&current) {
            return Ok(Resolved::Linear { unknown: current, power });
        }
        match system.shift_rules.get(&current) {
            Some(rule) => {
                power += rule.power;
                current = rule.source;
            }
            None => return Err(GfError::UndeclaredClass(current)),
        }
    }
    Err(GfError::CyclicShift(class))
}

/// Substitutes closed forms and shifts, then solves for the unknowns.
pub fn solve(system: &ClassSystem) -> Result<SolvedSystem, GfError> {
    system.check_declarations()?;

    let unknowns: Vec<ClassName> = system.linear_equations.keys().copied().collect();
    let index_of = |c: ClassName| unknowns.iter().position(|&u| u == c).unwrap();
    let k = unknowns.len();

    let mut matrix = vec![vec![RationalFunction::zero(); k]; k];
    let mut rhs = vec![RationalFunction::zero(); k];
    for (i, u) in unknowns.iter().enumerate() {
        matrix[i][i] = RationalFunction::one();
        for term in &system.linear_equations[u] {
            match resolve(system, term.class)? {
                Resolved::Known(r) => rhs[i] = &rhs[i] + &r.scale_poly(&term.coeff),
                Resolved::Linear { unknown, power } => {
                    let j = index_of(unknown);
                    let c = RationalFunction::from_poly(term.coeff.shift(power));
                    matrix[i][j] = &matrix[i][j] - &c;
                }
            }
        }
    }

    let solution = match solve_linear_system(&matrix, &rhs) {
        Ok(x) => x,
        Err(PolyError::SingularMatrix) => return Err(GfError::Singular),
        Err(e) => return Err(e.into()),
    };

    let mut per_class = BTreeMap::new();
    for name in ClassName::ALL {
        if !system.is_declared(name) {
            continue;
        }
        let value = match resolve(system, name)? {
            Resolved::Known(r) => r,
            Resolved::Linear { unknown, power } => solution[index_of(unknown)].shift(power),
        };
        per_class.insert(name, value);
    }
    let total = per_class.values().cloned().sum();
    Ok(SolvedSystem { per_class, total })
}

/// Integer coefficient table, generations `0..=n`, for every class.
pub fn class_census(
    solution: &SolvedSystem,
    n: usize,
) -> Result<BTreeMap<ClassName, Vec<BigInt>>, GfError> {
    solution
        .per_class
        .iter()
        .map(|(&class, r)| match r.integer_series(n) {
            Ok(s) => Ok((class, s)),
            Err(PolyError::NonIntegerCoefficient { index }) => {
                Err(GfError::NonIntegerCoefficient { class, index })
            }
            Err(e) => Err(e.into()),
        })
        .collect()
}
