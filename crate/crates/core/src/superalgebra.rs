//! 3x3 supermatrices over [`Expr`] and the loop-algebra generators.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::atom::Flow;
use crate::expr::{Expr, ExprError};
use crate::rewrite::{RewriteError, RewriteSystem, Substitution};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SuperMatrix {
    pub e: [[Expr; 3]; 3],
}

impl SuperMatrix {
    pub fn zero() -> Self {
        SuperMatrix::default()
    }

    pub fn identity() -> Self {
        SuperMatrix::diag([Expr::one(), Expr::one(), Expr::one()])
    }

    pub fn diag(d: [Expr; 3]) -> Self {
        let mut m = SuperMatrix::zero();
        for (k, v) in d.into_iter().enumerate() {
            m.e[k][k] = v;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Expr) -> Self {
        SuperMatrix { e: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))) }
    }

    pub fn try_map<E>(&self, mut f: impl FnMut(&Expr) -> Result<Expr, E>) -> Result<Self, E> {
        let mut out = SuperMatrix::zero();
        for r in 0..3 {
            for c in 0..3 {
                out.e[r][c] = f(&self.e[r][c])?;
            }
        }
        Ok(out)
    }

    pub fn map(&self, mut f: impl FnMut(&Expr) -> Expr) -> Self {
        SuperMatrix::from_fn(|r, c| f(&self.e[r][c]))
    }

    pub fn get(&self, r: usize, c: usize) -> &Expr {
        &self.e[r][c]
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(Expr::is_zero)
    }

    pub fn term_count(&self) -> usize {
        self.e.iter().flatten().map(Expr::len).sum()
    }

    pub fn scale(&self, c: &Expr) -> Self {
        self.map(|x| c * x)
    }

    pub fn commutator(&self, o: &SuperMatrix) -> SuperMatrix {
        &(self * o) - &(o * self)
    }

    pub fn d_dx(&self) -> Self {
        self.map(Expr::d_dx)
    }

    pub fn d_dt(&self, flow: Flow) -> Result<Self, ExprError> {
        self.try_map(|x| x.d_dt(flow))
    }

    pub fn rewrite(&self, rs: &RewriteSystem) -> Result<Self, RewriteError> {
        self.try_map(|x| rs.rewrite(x))
    }

    pub fn substitute(&self, s: &Substitution) -> Result<Self, ExprError> {
        self.try_map(|x| s.apply(x))
    }

    /// Nonzero entries as `(row, col, expr)`, 0-based.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, &Expr)> {
        (0..3)
            .flat_map(|r| (0..3).map(move |c| (r, c)))
            .filter(|(r, c)| !self.e[*r][*c].is_zero())
            .map(|(r, c)| (r, c, &self.e[r][c]))
            .collect()
    }
}

impl<'a> Mul<&'a SuperMatrix> for &'a SuperMatrix {
    type Output = SuperMatrix;
    fn mul(self, o: &SuperMatrix) -> SuperMatrix {
        SuperMatrix::from_fn(|r, c| (0..3).map(|k| &self.e[r][k] * &o.e[k][c]).sum())
    }
}

impl<'a> Add<&'a SuperMatrix> for &'a SuperMatrix {
    type Output = SuperMatrix;
    fn add(self, o: &SuperMatrix) -> SuperMatrix {
        SuperMatrix::from_fn(|r, c| &self.e[r][c] + &o.e[r][c])
    }
}

impl<'a> Sub<&'a SuperMatrix> for &'a SuperMatrix {
    type Output = SuperMatrix;
    fn sub(self, o: &SuperMatrix) -> SuperMatrix {
        SuperMatrix::from_fn(|r, c| &self.e[r][c] - &o.e[r][c])
    }
}

impl Neg for &SuperMatrix {
    type Output = SuperMatrix;
    fn neg(self) -> SuperMatrix {
        self.map(|x| -x)
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..3 {
            for c in 0..3 {
                writeln!(f, "({},{}): {}", r + 1, c + 1, self.e[r][c])?;
            }
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenKind {
    K1,
    K2,
    M1,
    M2,
    F1,
    F2,
    G1,
    G2,
    /// `E = K1 + K2`, the constant grade-one element and its shifts
    E,
}

/// A generator with its mode index `n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GenKind,
    pub n: i32,
}

impl Generator {
    pub fn new(kind: GenKind, n: i32) -> Self {
        Generator { kind, n }
    }

    /// Grade in units of one half.
    pub fn grade2(&self) -> i32 {
        let n = self.n;
        match self.kind {
            GenKind::K1 | GenKind::K2 | GenKind::M1 | GenKind::E => 4 * n + 2,
            GenKind::M2 => 4 * n,
            GenKind::F2 | GenKind::G1 => 4 * n + 1,
            GenKind::F1 | GenKind::G2 => 4 * n + 3,
        }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self.kind, GenKind::F1 | GenKind::F2 | GenKind::G1 | GenKind::G2)
    }

    /// Kernel of `ad E` versus its image.
    pub fn in_kernel(&self) -> bool {
        matches!(self.kind, GenKind::K1 | GenKind::K2 | GenKind::F1 | GenKind::F2 | GenKind::E)
    }

    /// The generators spanning the grade `grade2 / 2` subspace.
    pub fn basis(grade2: i32) -> Vec<Generator> {
        let n = grade2.div_euclid(4);
        match grade2.rem_euclid(4) {
            0 => vec![Generator::new(GenKind::M2, n)],
            1 => vec![Generator::new(GenKind::F2, n), Generator::new(GenKind::G1, n)],
            2 => vec![Generator::new(GenKind::K1, n), Generator::new(GenKind::K2, n), Generator::new(GenKind::M1, n)],
            _ => vec![Generator::new(GenKind::F1, n), Generator::new(GenKind::G2, n)],
        }
    }

    pub fn matrix(&self) -> SuperMatrix {
        generator_matrix(*self)
    }
}

fn zt(c: i64, p: i32) -> Expr {
    Expr::z(p).scale(&Scalar::int(c))
}

/// Matrix image of a generator; `lambda^a` is `z^(2a)`.
pub fn generator_matrix(g: Generator) -> SuperMatrix {
    let p = 2 * g.n;
    let mut m = SuperMatrix::zero();
    match g.kind {
        GenKind::K1 => {
            m.e[0][1] = zt(-1, p);
            m.e[1][0] = zt(-1, p + 2);
        }
        GenKind::K2 => {
            m = SuperMatrix::diag([zt(1, p + 1), zt(1, p + 1), zt(2, p + 1)]);
        }
        GenKind::M1 => {
            m.e[0][1] = zt(-1, p);
            m.e[1][0] = zt(1, p + 2);
        }
        GenKind::M2 => {
            m = SuperMatrix::diag([zt(1, p), zt(-1, p), Expr::zero()]);
        }
        GenKind::F1 => {
            m.e[0][2] = zt(1, p + 1);
            m.e[1][2] = zt(-1, p + 2);
            m.e[2][0] = zt(1, p + 2);
            m.e[2][1] = zt(-1, p + 1);
        }
        GenKind::F2 => {
            m.e[0][2] = zt(-1, p);
            m.e[1][2] = zt(1, p + 1);
            m.e[2][0] = zt(1, p + 1);
            m.e[2][1] = zt(-1, p);
        }
        GenKind::G1 => {
            m.e[0][2] = zt(1, p);
            m.e[1][2] = zt(1, p + 1);
            m.e[2][0] = zt(1, p + 1);
            m.e[2][1] = zt(1, p);
        }
        GenKind::G2 => {
            m.e[0][2] = zt(-1, p + 1);
            m.e[1][2] = zt(-1, p + 2);
            m.e[2][0] = zt(1, p + 2);
            m.e[2][1] = zt(1, p + 1);
        }
        GenKind::E => {
            return &generator_matrix(Generator::new(GenKind::K1, g.n)) + &generator_matrix(Generator::new(GenKind::K2, g.n));
        }
    }
    m
}

/// Grade of a homogeneous matrix in units of one half, read off from the
/// z-powers with the principal grading shift; `None` if
/// the matrix is zero or inhomogeneous.
pub fn homogeneous_grade2(m: &SuperMatrix) -> Option<i32> {
    // entry (r,c) carrying z^p sits at grade p + shift(r,c)/2
    const SHIFT: [[i32; 3]; 3] = [[0, 2, 1], [-2, 0, -1], [-1, 1, 0]];
    let mut grade = None;
    for r in 0..3 {
        for c in 0..3 {
            for (mono, _) in m.e[r][c].terms() {
                let g = 2 * mono.zpow() + SHIFT[r][c];
                match grade {
                    None => grade = Some(g),
                    Some(h) if h != g => return None,
                    _ => {}
                }
            }
        }
    }
    grade
}

/// Solves `target = sum_k c_k mats[k]` for expression coefficients `c_k`,
/// where each `mats[k]` has scalar z-monomial entries.
///
/// Returns `None` when the target is outside the span. Redundant matrices
/// get coefficient zero.
pub fn decompose(target: &SuperMatrix, mats: &[SuperMatrix]) -> Option<Vec<Expr>> {
    let mut positions = BTreeSet::new();
    for m in mats.iter().chain(std::iter::once(target)) {
        for r in 0..3 {
            for c in 0..3 {
                positions.extend(m.e[r][c].by_zpow().into_keys().map(|p| (r, c, p)));
            }
        }
    }
    let mut rows: Vec<(Vec<Scalar>, Expr)> = positions
        .iter()
        .map(|&(r, c, p)| {
            let coeffs = mats.iter().map(|m| m.e[r][c].z_coeff(p).as_scalar().expect("scalar generator entries")).collect();
            (coeffs, target.e[r][c].z_coeff(p))
        })
        .collect();
    let mut sol = vec![Expr::zero(); mats.len()];
    let mut pivots = Vec::new();
    let mut next = 0;
    for k in 0..mats.len() {
        let Some(pr) = (next..rows.len()).find(|&i| !rows[i].0[k].is_zero()) else { continue };
        rows.swap(next, pr);
        let inv = rows[next].0[k].inverse().expect("nonzero pivot");
        rows[next].0.iter_mut().for_each(|x| *x = &*x * &inv);
        rows[next].1 = rows[next].1.scale(&inv);
        let (pc, pe) = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || row.0[k].is_zero() {
                continue;
            }
            let f = row.0[k].clone();
            for (x, y) in row.0.iter_mut().zip(&pc) {
                *x -= &(&f * y);
            }
            row.1 = &row.1 - &pe.scale(&f);
        }
        pivots.push((k, next));
        next += 1;
    }
    if rows[next..].iter().any(|(_, e)| !e.is_zero()) {
        return None;
    }
    for (k, i) in pivots {
        sol[k] = rows[i].1.clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(kind: GenKind, n: i32) -> SuperMatrix {
        Generator::new(kind, n).matrix()
    }

    #[test]
    fn appendix_examples() {
        assert_eq!(g(GenKind::K2, 0), SuperMatrix::diag([Expr::z(1), Expr::z(1), Expr::z(1).scale_int(2)]));
        assert_eq!(g(GenKind::M2, 0), SuperMatrix::diag([Expr::one(), Expr::int(-1), Expr::zero()]));
        let f2 = g(GenKind::F2, 0);
        assert_eq!(f2.e[0][2], Expr::int(-1));
        assert_eq!(f2.e[1][2], Expr::z(1));
        assert_eq!(f2.e[2][0], Expr::z(1));
        assert_eq!(f2.e[2][1], Expr::int(-1));
    }

    #[test]
    fn kernel_and_image_of_e() {
        let e = g(GenKind::E, 0);
        assert!(e.commutator(&g(GenKind::K1, 0)).is_zero());
        assert!(e.commutator(&g(GenKind::K2, 3)).is_zero());
        let m1 = g(GenKind::M1, 0);
        assert_eq!(e.commutator(&g(GenKind::M2, 0)), m1.scale(&Expr::int(-2)));
        assert!(g(GenKind::M2, 0).commutator(&g(GenKind::M2, 0)).is_zero());
    }

    #[test]
    fn grades_match_table() {
        for n in -2..3 {
            for kind in [GenKind::K1, GenKind::K2, GenKind::M1, GenKind::M2, GenKind::F1, GenKind::F2, GenKind::G1, GenKind::G2] {
                let gen = Generator::new(kind, n);
                assert_eq!(homogeneous_grade2(&gen.matrix()), Some(gen.grade2()), "{gen:?}");
                assert!(Generator::basis(gen.grade2()).contains(&gen));
            }
        }
    }
}
