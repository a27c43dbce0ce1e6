//! Sparse multivariate polynomials with rational coefficients, evaluated
//! over any [`RingElem`].

use num_traits::Zero;

use crate::arith::{Rat, RingElem};

#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: Vec<(Rat, Vec<u8>)>,
}

impl MPoly {
    pub fn new(nvars: usize, mut terms: Vec<(Rat, Vec<u8>)>) -> Self {
        debug_assert!(terms.iter().all(|(_, e)| e.len() == nvars));
        terms.sort_by(|a, b| b.1.cmp(&a.1));
        let mut merged: Vec<(Rat, Vec<u8>)> = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            match merged.last_mut() {
                Some((c0, e0)) if *e0 == e => *c0 += c,
                _ => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| !Zero::is_zero(c));
        MPoly { nvars, terms: merged }
    }

    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_exponent(&self) -> usize {
        self.terms.iter().flat_map(|(_, e)| e.iter()).copied().max().unwrap_or(0) as usize
    }

    /// Total degree of every monomial, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.iter().map(|(_, e)| e.iter().map(|&x| x as usize).sum::<usize>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Degrees in the two variable blocks `[0, split)` and `[split, nvars)`.
    pub fn bidegree(&self, split: usize) -> Option<(usize, usize)> {
        let mut it = self.terms.iter().map(|(_, e)| {
            (e[..split].iter().map(|&x| x as usize).sum::<usize>(), e[split..].iter().map(|&x| x as usize).sum::<usize>())
        });
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Evaluate at `vals`; `None` if a coefficient denominator is not a unit
    /// in the target ring.
    pub fn eval<R: RingElem>(&self, vals: &[R]) -> Option<R> {
        debug_assert_eq!(vals.len(), self.nvars);
        let sample = &vals[0];
        let maxe = self.max_exponent();
        let pows: Vec<Vec<R>> = vals
            .iter()
            .map(|v| {
                let mut p = Vec::with_capacity(maxe + 1);
                p.push(sample.one_like());
                for i in 1..=maxe {
                    let next = p[i - 1].times(v);
                    p.push(next);
                }
                p
            })
            .collect();
        self.eval_with_powers(&pows, sample)
    }

    pub fn eval_with_powers<R: RingElem>(&self, pows: &[Vec<R>], sample: &R) -> Option<R> {
        let mut acc = sample.zero_like();
        for (c, e) in &self.terms {
            let mut t = sample.from_rat_like(c)?;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.times(&pows[i][k as usize]);
                }
            }
            acc = acc.plus(&t);
        }
        Some(acc)
    }
}

/// Build a polynomial from `(coefficient, exponents)` pairs with integer
/// coefficients.
pub fn mpoly_i(nvars: usize, terms: &[(Rat, &[u8])]) -> MPoly {
    MPoly::new(nvars, terms.iter().map(|(c, e)| (c.clone(), e.to_vec())).collect())
}
