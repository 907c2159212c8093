use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Representation, SystemId};
use crate::error::{Error, Result};
use crate::example::{Alphabet, Example};

/// Status of one variable in a conjunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Literal {
    Absent,
    Positive,
    Negative,
    /// Both `xᵢ` and `¬xᵢ`; only in the initial all-literals monomial.
    Both,
}

impl Literal {
    fn symbol(self) -> char {
        match self {
            Literal::Absent => '-',
            Literal::Positive => '1',
            Literal::Negative => '0',
            Literal::Both => '*',
        }
    }

    /// Whether the literal(s) hold when the variable has value `bit`.
    #[inline]
    pub fn satisfied_by(self, bit: bool) -> bool {
        match self {
            Literal::Absent => true,
            Literal::Positive => bit,
            Literal::Negative => !bit,
            Literal::Both => false,
        }
    }
}

/// A conjunction of literals over `n` boolean variables.
///
/// The canonical text form has one character per variable: `1` for `xᵢ`,
/// `0` for `¬xᵢ`, `-` when the variable is absent, and `*` for the
/// contradictory initial state (all characters `*`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Monomial {
    literals: Vec<Literal>,
}

impl Monomial {
    pub fn new(literals: Vec<Literal>) -> Result<Self> {
        if literals.is_empty() {
            return Err(Error::Representation("monomial over zero variables".into()));
        }
        let both = literals.iter().filter(|&&l| l == Literal::Both).count();
        if both != 0 && both != literals.len() {
            return Err(Error::Representation(
                "`both` is only allowed in the all-literals monomial".into(),
            ));
        }
        Ok(Self { literals })
    }

    /// The always-true monomial.
    pub fn empty(n: usize) -> Self {
        Self::new(vec![Literal::Absent; n]).expect("n ≥ 1")
    }

    /// `x₁ ¬x₁ … xₙ ¬xₙ`, which rejects every example.
    pub fn all_literals(n: usize) -> Self {
        Self::new(vec![Literal::Both; n]).expect("n ≥ 1")
    }

    pub fn n(&self) -> usize {
        self.literals.len()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn literal(&self, var: usize) -> Literal {
        self.literals[var]
    }

    pub fn is_contradiction(&self) -> bool {
        self.literals[0] == Literal::Both
    }

    /// Number of variables that occur (the `k` of a `k`-literal target).
    pub fn size(&self) -> usize {
        self.literals.iter().filter(|&&l| l != Literal::Absent).count()
    }

    /// Literal-set containment: every literal of `other` also occurs in `self`.
    pub fn contains_literals_of(&self, other: &Monomial) -> bool {
        if self.n() != other.n() {
            return false;
        }
        if self.is_contradiction() {
            return true;
        }
        if other.is_contradiction() {
            return false;
        }
        self.literals
            .iter()
            .zip(&other.literals)
            .all(|(&mine, &theirs)| theirs == Literal::Absent || mine == theirs)
    }

    /// Conjunction of two monomials; `None` if it is contradictory.
    pub fn and(&self, other: &Monomial) -> Option<Monomial> {
        if self.n() != other.n() || self.is_contradiction() || other.is_contradiction() {
            return None;
        }
        let mut literals = Vec::with_capacity(self.n());
        for (&a, &b) in self.literals.iter().zip(&other.literals) {
            literals.push(match (a, b) {
                (Literal::Absent, x) | (x, Literal::Absent) => x,
                (x, y) if x == y => x,
                _ => return None,
            });
        }
        Some(Monomial { literals })
    }

    /// Evaluates on the assignment packed into `mask` (bit `i` = variable `i+1`).
    #[inline]
    pub fn contains_mask(&self, mask: u64) -> bool {
        self.literals
            .iter()
            .enumerate()
            .all(|(i, l)| l.satisfied_by(mask >> i & 1 == 1))
    }

    /// Readable form such as `x1 ∧ ¬x2`; `⊤` for the empty monomial, `⊥` for the contradiction.
    pub fn pretty(&self) -> String {
        if self.is_contradiction() {
            return "⊥".into();
        }
        let terms: Vec<String> = self
            .literals
            .iter()
            .enumerate()
            .filter_map(|(i, l)| match l {
                Literal::Positive => Some(format!("x{}", i + 1)),
                Literal::Negative => Some(format!("¬x{}", i + 1)),
                _ => None,
            })
            .collect();
        if terms.is_empty() {
            "⊤".into()
        } else {
            terms.join(" ∧ ")
        }
    }
}

impl Representation for Monomial {
    fn system(&self) -> SystemId {
        SystemId::Monomial
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::Binary
    }

    fn example_len(&self) -> usize {
        self.n()
    }

    #[inline]
    fn contains(&self, x: &Example) -> bool {
        self.literals.iter().enumerate().all(|(i, l)| l.satisfied_by(x.bit(i)))
    }

    /// Two bits per variable (absent / positive / negative / both).
    fn length_bits(&self) -> u64 {
        2 * self.n() as u64
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.literals {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

impl FromStr for Monomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let literals = s
            .trim()
            .chars()
            .map(|c| match c {
                '-' => Ok(Literal::Absent),
                '1' => Ok(Literal::Positive),
                '0' => Ok(Literal::Negative),
                '*' => Ok(Literal::Both),
                other => Err(Error::Parse(format!("{other:?} is not a monomial pattern symbol"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Monomial::new(literals)
    }
}

impl TryFrom<String> for Monomial {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Monomial> for String {
    fn from(m: Monomial) -> String {
        m.to_string()
    }
}
