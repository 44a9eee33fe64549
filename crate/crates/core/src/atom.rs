//! Generators of the graded differential ring.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Field and parameter labels. Declaration order is alphabetical in the
/// rendered label, which fixes the global odd-atom order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Field {
    B1,
    Eps,
    F1,
    Phi,
    Phi1,
    Phi2,
    PhiM,
    PhiP,
    Psb,
    Psb1,
    Psb2,
    PsbM,
    PsbP,
    Psi,
    Omega,
}

pub const ALL_FIELDS: [Field; 15] = [
    Field::B1,
    Field::Eps,
    Field::F1,
    Field::Phi,
    Field::Phi1,
    Field::Phi2,
    Field::PhiM,
    Field::PhiP,
    Field::Psb,
    Field::Psb1,
    Field::Psb2,
    Field::PsbM,
    Field::PsbP,
    Field::Psi,
    Field::Omega,
];

impl Field {
    pub fn label(self) -> &'static str {
        match self {
            Field::B1 => "b1",
            Field::Eps => "eps",
            Field::F1 => "f1",
            Field::Phi => "phi",
            Field::Phi1 => "phi1",
            Field::Phi2 => "phi2",
            Field::PhiM => "phim",
            Field::PhiP => "phip",
            Field::Psb => "psb",
            Field::Psb1 => "psb1",
            Field::Psb2 => "psb2",
            Field::PsbM => "psbm",
            Field::PsbP => "psbp",
            Field::Psi => "psi",
            Field::Omega => "w",
        }
    }

    pub fn from_label(s: &str) -> Option<Field> {
        ALL_FIELDS.iter().copied().find(|f| f.label() == s)
    }

    pub fn is_odd(self) -> bool {
        matches!(
            self,
            Field::Eps
                | Field::F1
                | Field::Psb
                | Field::Psb1
                | Field::Psb2
                | Field::PsbM
                | Field::PsbP
                | Field::Psi
        )
    }

    /// Parameters carry no x or t dependence.
    pub fn is_constant(self) -> bool {
        matches!(self, Field::Omega | Field::Eps)
    }

    /// Bosonic fields that may appear inside exponential atoms.
    pub fn is_exponentiable(self) -> bool {
        matches!(self, Field::Phi | Field::Phi1 | Field::Phi2 | Field::PhiP | Field::PhiM)
    }
}

/// Time flows of the hierarchy.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Flow {
    Tm1,
    T1,
    T3,
    T5,
}

impl Flow {
    pub fn label(self) -> &'static str {
        match self {
            Flow::Tm1 => "tm1",
            Flow::T1 => "t1",
            Flow::T3 => "t3",
            Flow::T5 => "t5",
        }
    }

    pub fn from_label(s: &str) -> Option<Flow> {
        match s {
            "tm1" | "t-1" => Some(Flow::Tm1),
            "t1" => Some(Flow::T1),
            "t3" => Some(Flow::T3),
            "t5" => Some(Flow::T5),
            _ => None,
        }
    }
}

impl fmt::Display for Flow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A jet `d_x^dx d_t field`, a time jet when `dt` is set, or a parameter.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub field: Field,
    pub dx: u8,
    pub dt: Option<Flow>,
}

impl Atom {
    pub const fn jet(field: Field, dx: u8) -> Atom {
        Atom { field, dx, dt: None }
    }

    pub const fn time_jet(field: Field, dx: u8, flow: Flow) -> Atom {
        Atom { field, dx, dt: Some(flow) }
    }

    pub fn is_odd(self) -> bool {
        self.field.is_odd()
    }

    pub fn bump_x(self) -> Atom {
        Atom { dx: self.dx + 1, ..self }
    }

    pub fn base(self) -> Atom {
        Atom { dx: 0, ..self }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.label())?;
        if self.dx > 0 {
            write!(f, "_{}", self.dx)?;
        }
        if let Some(t) = self.dt {
            write!(f, "_{}", t.label())?;
        }
        Ok(())
    }
}

/// Parses `phi`, `psb_3`, `phip_t3`, `f1_2_t5`.
pub fn parse_atom(s: &str) -> Option<Atom> {
    let mut parts = s.split('_');
    let field = Field::from_label(parts.next()?)?;
    let mut atom = Atom::jet(field, 0);
    for p in parts {
        if let Some(flow) = Flow::from_label(p) {
            if atom.dt.is_some() {
                return None;
            }
            atom.dt = Some(flow);
        } else {
            if atom.dx != 0 || atom.dt.is_some() {
                return None;
            }
            atom.dx = p.parse().ok()?;
        }
    }
    if field.is_constant() && (atom.dx > 0 || atom.dt.is_some()) {
        return None;
    }
    Some(atom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_labels_round_trip() {
        for a in [
            Atom::jet(Field::Phi, 0),
            Atom::jet(Field::Psb, 3),
            Atom::time_jet(Field::PhiP, 0, Flow::T3),
            Atom::time_jet(Field::F1, 2, Flow::Tm1),
        ] {
            assert_eq!(parse_atom(&a.to_string()), Some(a));
        }
        assert_eq!(parse_atom("w_1"), None);
        assert_eq!(parse_atom("nope"), None);
    }

    #[test]
    fn field_order_is_label_order() {
        let mut labels: Vec<_> = ALL_FIELDS.iter().map(|f| f.label()).collect();
        let sorted = {
            let mut l = labels.clone();
            l.sort();
            l
        };
        assert_eq!(labels, sorted);
        labels.clear();
    }
}
