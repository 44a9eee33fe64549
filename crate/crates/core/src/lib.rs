//! Symbolic verification of the supersymmetric mKdV hierarchy, its type-I
//! defect and the defect-modified conserved charges.

pub mod antideriv;
pub mod atom;
pub mod backlund;
pub mod charges;
pub mod defects;
pub mod expr;
pub mod formula;
pub mod hierarchy;
pub mod linalg;
pub mod numeric;
pub mod report;
pub mod rewrite;
pub mod scalar;
pub mod superspace;
pub mod superalgebra;
pub use hierarchy::{build_ax, build_at, FlowSpec};

pub use antideriv::antiderivative_x;
pub use atom::{Atom, Field, Flow};
pub use expr::{Expr, ExprError, Monomial, Parity};
pub use formula::{ex, parse_expr};
pub use rewrite::{RewriteError, RewriteSystem, Substitution};
pub use scalar::Scalar;
pub use superspace::{parse_super, sx, SuperExpr};
pub use superalgebra::{generator_matrix, GenKind, Generator, SuperMatrix};
