//! Two-phase dense tableau simplex over exact rationals, Bland's rule.

use num_traits::{Signed, Zero};

use super::{LpError, LpProblem, LpSolution, Relation, Sense, Status};
use crate::hardcore::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Column {
    Structural(usize),
    Negative(usize),
    Slack(usize),
    Artificial(usize),
}

struct Tableau {
    /// `rows[i]` holds the constraint coefficients followed by the rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut r = cost[j].clone();
        for (i, row) in self.rows.iter().enumerate() {
            if !row[j].is_zero() {
                r -= &cost[self.basis[i]] * &row[j];
            }
        }
        r
    }

    /// Minimize `cost` over the current basis, entering only `allowed`
    /// columns. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            // Bland: lowest-index improving column enters
            let entering = (0..self.width)
                .find(|&j| allowed[j] && !self.basis.contains(&j) && self.reduced_cost(cost, j).is_negative());
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Solve exactly. Infeasible and unbounded problems come back with that
/// status and empty value vectors.
pub fn simplex_solve(p: &LpProblem) -> Result<LpSolution, LpError> {
    p.validate()?;
    let n = p.num_vars();
    let m = p.rows.len();

    let mut columns: Vec<Column> = (0..n).map(Column::Structural).collect();
    columns.extend((0..n).filter(|&j| !p.nonnegative[j]).map(Column::Negative));
    columns.extend(
        (0..m)
            .filter(|&i| p.rows[i].relation != Relation::Eq)
            .map(Column::Slack),
    );
    let first_artificial = columns.len();
    columns.extend((0..m).map(Column::Artificial));
    let width = columns.len();

    let mut flipped = vec![false; m];
    let mut rows = Vec::with_capacity(m);
    for (i, row) in p.rows.iter().enumerate() {
        let negate = row.rhs.is_negative();
        flipped[i] = negate;
        let sign = |v: Rational| if negate { -v } else { v };
        let mut t = vec![Rational::zero(); width + 1];
        for (k, col) in columns.iter().enumerate() {
            t[k] = match *col {
                Column::Structural(j) => sign(row.coeffs[j].clone()),
                Column::Negative(j) => sign(-row.coeffs[j].clone()),
                Column::Slack(r) if r == i => sign(match row.relation {
                    Relation::Le => Rational::from_integer(1.into()),
                    _ => Rational::from_integer((-1).into()),
                }),
                Column::Artificial(r) if r == i => Rational::from_integer(1.into()),
                _ => Rational::zero(),
            };
        }
        t[width] = sign(row.rhs.clone());
        rows.push(t);
    }
    let mut tab = Tableau {
        rows,
        basis: (first_artificial..width).collect(),
        width,
    };

    // phase 1
    let phase1_cost: Vec<Rational> = (0..width)
        .map(|k| Rational::from_integer(((k >= first_artificial) as i64).into()))
        .collect();
    let everything = vec![true; width];
    tab.optimize(&phase1_cost, &everything);
    let infeasibility: Rational = (0..m).map(|i| &phase1_cost[tab.basis[i]] * tab.rhs(i)).sum();
    let labels_of = |basis: &[usize]| -> Vec<String> { basis.iter().map(|&k| column_label(p, &columns[k])).collect() };
    if infeasibility.is_positive() {
        return Ok(LpSolution {
            status: Status::Infeasible,
            variables: p.variables.clone(),
            row_labels: p.rows.iter().map(|r| r.label.clone()).collect(),
            primal: Vec::new(),
            dual: Vec::new(),
            objective: None,
            basis: tab.basis.clone(),
            basis_labels: labels_of(&tab.basis),
        });
    }
    // drive zero-level artificials out where some real column allows it;
    // rows where none does are redundant and keep their artificial at zero
    for i in 0..m {
        if tab.basis[i] < first_artificial {
            continue;
        }
        if let Some(c) = (0..first_artificial).find(|&c| !tab.rows[i][c].is_zero() && !tab.basis.contains(&c)) {
            tab.pivot(i, c);
        }
    }

    // phase 2 always minimizes
    let mut cost = vec![Rational::zero(); width];
    for (k, col) in columns.iter().enumerate() {
        let c = match *col {
            Column::Structural(j) => p.objective[j].clone(),
            Column::Negative(j) => -p.objective[j].clone(),
            _ => continue,
        };
        cost[k] = match p.sense {
            Sense::Min => c,
            Sense::Max => -c,
        };
    }
    let allowed: Vec<bool> = (0..width).map(|k| k < first_artificial).collect();
    let bounded = tab.optimize(&cost, &allowed);
    if !bounded {
        return Ok(LpSolution {
            status: Status::Unbounded,
            variables: p.variables.clone(),
            row_labels: p.rows.iter().map(|r| r.label.clone()).collect(),
            primal: Vec::new(),
            dual: Vec::new(),
            objective: None,
            basis: tab.basis.clone(),
            basis_labels: labels_of(&tab.basis),
        });
    }

    let mut primal = vec![Rational::zero(); n];
    for (i, &k) in tab.basis.iter().enumerate() {
        match columns[k] {
            Column::Structural(j) => primal[j] += tab.rhs(i),
            Column::Negative(j) => primal[j] -= tab.rhs(i),
            _ => {}
        }
    }
    // y = c_B B^{-1}; column of artificial i in the tableau is B^{-1} e_i
    let mut dual: Vec<Rational> = (0..m)
        .map(|i| {
            let col = first_artificial + i;
            let y: Rational = (0..m).map(|r| &cost[tab.basis[r]] * &tab.rows[r][col]).sum();
            let y = if flipped[i] { -y } else { y };
            match p.sense {
                Sense::Min => y,
                Sense::Max => -y,
            }
        })
        .collect();
    for y in dual.iter_mut() {
        if y.is_zero() {
            *y = Rational::zero();
        }
    }
    let objective = p.objective_value(&primal);
    Ok(LpSolution {
        status: Status::Optimal,
        variables: p.variables.clone(),
        row_labels: p.rows.iter().map(|r| r.label.clone()).collect(),
        primal,
        dual,
        objective: Some(objective),
        basis: tab.basis.clone(),
        basis_labels: labels_of(&tab.basis),
    })
}

fn column_label(p: &LpProblem, col: &Column) -> String {
    match *col {
        Column::Structural(j) => p.variables[j].clone(),
        Column::Negative(j) => format!("-{}", p.variables[j]),
        Column::Slack(i) => format!("slack:{}", p.rows[i].label),
        Column::Artificial(i) => format!("artificial:{}", p.rows[i].label),
    }
}
