//! Exact rational feasibility LP: phase-one simplex with Bland's rule.
//!
//! Variables are free. Each constraint is `coeffs . x (>=|=|<=) rhs`.

use num_traits::{Signed, Zero};

use crate::exact::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    AtLeast,
    Equal,
    AtMost,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b);
        match self.relation {
            Relation::AtLeast => lhs >= self.rhs,
            Relation::Equal => lhs == self.rhs,
            Relation::AtMost => lhs <= self.rhs,
        }
    }
}

/// Returns a point satisfying every constraint, or `None` if the system is
/// infeasible.
pub fn find_feasible(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<Rat>> {
    let m = constraints.len();
    if m == 0 {
        return Some(vec![Rat::zero(); num_vars]);
    }
    // Columns: x+ (n), x- (n), one slack per inequality, one artificial per row.
    let n2 = 2 * num_vars;
    let slack_of: Vec<Option<usize>> = {
        let mut next = n2;
        constraints
            .iter()
            .map(|c| {
                (c.relation != Relation::Equal).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let num_slack = slack_of.iter().flatten().count();
    let art0 = n2 + num_slack;
    let cols = art0 + m;

    let mut t = vec![vec![Rat::zero(); cols]; m];
    let mut b = vec![Rat::zero(); m];
    let mut basis = vec![0usize; m];
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), num_vars, "constraint width");
        let flip = c.rhs.is_negative();
        let sign = |q: &Rat| if flip { -q.clone() } else { q.clone() };
        for (j, a) in c.coeffs.iter().enumerate() {
            t[i][j] = sign(a);
            t[i][num_vars + j] = -sign(a);
        }
        if let Some(s) = slack_of[i] {
            // AtLeast gets a surplus (-1), AtMost a slack (+1), before the flip.
            let unit = if c.relation == Relation::AtLeast { -1 } else { 1 };
            t[i][s] = sign(&crate::exact::rat(unit));
        }
        b[i] = sign(&c.rhs);
        t[i][art0 + i] = crate::exact::rat(1);
        basis[i] = art0 + i;
    }

    // Phase-one reduced costs for minimising the sum of artificials.
    let mut d = vec![Rat::zero(); cols];
    for row in &t {
        for j in 0..art0 {
            d[j] -= &row[j];
        }
    }

    while let Some(enter) = (0..cols).find(|&j| d[j].is_negative()) {
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &b[i] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (r, _) = leave.expect("phase-one LP cannot be unbounded");
        pivot(&mut t, &mut b, &mut d, r, enter);
        basis[r] = enter;
    }

    let infeasibility: Rat = (0..m)
        .filter(|&i| basis[i] >= art0)
        .fold(Rat::zero(), |acc, i| acc + &b[i]);
    if !infeasibility.is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); num_vars];
    for (i, &var) in basis.iter().enumerate() {
        if var < num_vars {
            x[var] += &b[i];
        } else if var < n2 {
            x[var - num_vars] -= &b[i];
        }
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&x)));
    Some(x)
}

fn pivot(t: &mut [Vec<Rat>], b: &mut [Rat], d: &mut [Rat], r: usize, c: usize) {
    let inv = crate::exact::rat(1) / &t[r][c];
    for v in t[r].iter_mut() {
        if !v.is_zero() {
            *v *= &inv;
        }
    }
    b[r] *= &inv;
    let pivot_row = t[r].clone();
    let pivot_b = b[r].clone();
    for i in 0..t.len() {
        if i == r || t[i][c].is_zero() {
            continue;
        }
        let f = t[i][c].clone();
        for (j, pv) in pivot_row.iter().enumerate() {
            if !pv.is_zero() {
                t[i][j] -= &f * pv;
            }
        }
        b[i] -= &f * &pivot_b;
    }
    if !d[c].is_zero() {
        let f = d[c].clone();
        for (j, pv) in pivot_row.iter().enumerate() {
            if !pv.is_zero() {
                d[j] -= &f * pv;
            }
        }
    }
}
