//! Integer matrices and Smith normal form.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Int;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<Int>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, a: vec![vec![Int::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.a[i][i] = Int::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, a: rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect() }
    }

    pub fn from_rows(a: Vec<Vec<Int>>) -> Self {
        let cols = a.first().map_or(0, |r| r.len());
        assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: a.len(), cols, a }
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut r = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    r.a[i][j] += &self.a[i][k] * &o.a[k][j];
                }
            }
        }
        r
    }

    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.rows.min(self.cols)).map(|i| self.a[i][i].clone()).collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let t = &self.a[j][k] * c;
            self.a[i][k] += t;
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for r in self.a.iter_mut() {
            let t = &r[j] * c;
            r[i] += t;
        }
    }

    fn neg_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
    }
}

/// Result of [`smith_normal_form`]: `u · m · v = d`, with `v_inv = v⁻¹`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Nonnegative diagonal entries d₁ | d₂ | ….
    pub fn invariants(&self) -> Vec<Int> {
        self.d.diagonal()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut vi = IntMatrix::identity(cols);
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry of the trailing block
        let mut piv = None;
        for i in t..rows {
            for j in t..cols {
                if !d.a[i][j].is_zero() && piv.is_none_or(|(pi, pj): (usize, usize)| d.a[i][j].abs() < d.a[pi][pj].abs()) {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        vi.swap_rows(t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            let q = d.a[i][t].div_floor(&d.a[t][t]);
            let c = -q;
            d.add_row(i, t, &c);
            u.add_row(i, t, &c);
            if !d.a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = d.a[t][j].div_floor(&d.a[t][t]);
            let c = -q.clone();
            d.add_col(j, t, &c);
            v.add_col(j, t, &c);
            // inverse of col_j += c col_t is row_t -= c row_j on v⁻¹
            vi.add_row(t, j, &q);
            if !d.a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        let mut bad = None;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !d.a[i][j].is_multiple_of(&d.a[t][t]) {
                    bad = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = bad {
            let one = Int::one();
            d.add_row(t, i, &one);
            u.add_row(t, i, &one);
            continue;
        }
        if d.a[t][t].is_negative() {
            d.neg_row(t);
            u.neg_row(t);
        }
        t += 1;
    }
    Snf { d, u, v, v_inv: vi }
}

/// Invariant factors (> 1) of the abelian group ℤⁿ / (row span of `m`),
/// where `m` has full column rank n.
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    smith_normal_form(m).invariants().into_iter().filter(|x| !x.is_one()).collect()
}
