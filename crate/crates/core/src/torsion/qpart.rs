//! The q-part of J(ℚ)_tors by lifting elements of a q-Sylow subgroup of
//! J(F_p), following the sets Tₙ, Gₙ, Sₙ′ of the q-part algorithm.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::sqrt::valuation;
use crate::arith::Int;
use crate::error::{Error, Result};
use crate::jacobian::{JacElem, JacobianFp, SylowBasis};

use super::backend::KummerBackend;
use super::bound::{prime_rng, ReductionBound};
use super::height::HeightBound;
use super::two_torsion::TwoTorsion;
use super::lift::{lift_and_recognize, LiftCertificate, LiftConfig, LiftOutcome};

/// Largest q-Sylow subgroup handled by explicit enumeration.
const MAX_SYLOW: u64 = 1 << 20;

/// ⊕ ℤ/q^{eᵢ} with elements encoded in mixed radix.
#[derive(Clone, Debug)]
pub struct QGroup {
    pub q: u64,
    pub orders: Vec<u64>,
    pub size: usize,
}

impl QGroup {
    pub fn new(q: u64, exps: &[u32]) -> Self {
        let orders: Vec<u64> = exps.iter().map(|&e| q.pow(e)).collect();
        let size = orders.iter().product::<u64>() as usize;
        QGroup { q, orders, size }
    }

    pub fn decode(&self, mut x: usize) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&o| {
                let c = x as u64 % o;
                x /= o as usize;
                c
            })
            .collect()
    }

    pub fn encode(&self, c: &[u64]) -> usize {
        let mut x = 0usize;
        for (ci, &o) in c.iter().zip(&self.orders).rev() {
            x = x * o as usize + (ci % o) as usize;
        }
        x
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.decode(a), self.decode(b));
        let c: Vec<u64> = ca.iter().zip(&cb).zip(&self.orders).map(|((x, y), o)| (x + y) % o).collect();
        self.encode(&c)
    }

    pub fn scale(&self, a: usize, k: u64) -> usize {
        let c: Vec<u64> = self.decode(a).iter().zip(&self.orders).map(|(x, o)| (x * (k % o)) % o).collect();
        self.encode(&c)
    }

    /// Order of a modulo the subgroup `h` (given as a membership table).
    pub fn order_mod(&self, a: usize, h: &[bool]) -> u64 {
        let mut x = a;
        let mut ord = 1;
        while !h[x] {
            x = self.scale(x, self.q);
            ord *= self.q;
        }
        ord
    }

    pub fn order(&self, a: usize) -> u64 {
        let mut h = vec![false; self.size];
        h[0] = true;
        self.order_mod(a, &h)
    }

    /// The subgroup generated by `gens` together with `base`.
    pub fn closure(&self, base: &[bool], gens: &[usize]) -> Vec<bool> {
        let mut set = base.to_vec();
        for &g in gens {
            let members: Vec<usize> = (0..self.size).filter(|&x| set[x]).collect();
            let mut mult = g;
            while !set[mult] {
                for &x in &members {
                    set[self.add(x, mult)] = true;
                }
                mult = self.add(mult, g);
            }
        }
        set
    }

    /// Invariant factors of a subgroup given as a membership table.
    pub fn structure(&self, set: &[bool]) -> Vec<Int> {
        let members: Vec<usize> = (0..self.size).filter(|&x| set[x]).collect();
        // r_k = log_q #{x : q^k x = 0}
        let mut ranks = vec![0u32];
        let mut k = 0;
        loop {
            k += 1;
            let qk = self.q.pow(k);
            let c = members.iter().filter(|&&x| self.scale(x, qk) == 0).count() as u64;
            let r = valuation(&BigInt::from(c), self.q);
            ranks.push(r);
            if c as usize == members.len() {
                break;
            }
        }
        let diffs: Vec<u32> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
        let mut out = Vec::new();
        for (k, &w) in diffs.iter().enumerate() {
            let next = diffs.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(w - next) {
                out.push(BigInt::from(self.q).pow(k as u32 + 1));
            }
        }
        out.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftRecord {
    /// Coordinates of the element with respect to the Sylow basis.
    pub element: Vec<u64>,
    pub m: u64,
    pub lifts: bool,
    /// How the answer was obtained: "lift", "two-torsion" or "subgroup".
    pub via: String,
    pub certificate: Option<LiftCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPartReport {
    pub q: u64,
    pub prime: Option<u64>,
    pub sylow: Vec<String>,
    pub structure: Vec<String>,
    pub lift_calls: usize,
    pub records: Vec<LiftRecord>,
}

impl QPartReport {
    pub fn invariants(&self) -> Vec<Int> {
        self.structure.iter().map(|s| s.parse().unwrap()).collect()
    }
}

/// Choice of p for the q-part: a usable good prime p ≠ q whose q-Sylow is
/// smallest, ties broken by the smaller prime.
/// With `two_torsion` given, p must also be one where J(ℚ)[2] can be
/// reduced explicitly.
pub fn choose_prime<B: KummerBackend + ?Sized>(
    backend: &B,
    bound: &ReductionBound,
    q: u64,
    two_torsion: Option<&TwoTorsion>,
) -> Option<(u64, JacobianFp, u32)> {
    let mut cands: Vec<(u32, u64)> = bound
        .primes
        .iter()
        .filter(|d| d.p != q)
        .map(|d| (valuation(&d.order, q), d.p))
        .collect();
    cands.sort();
    for (v, p) in cands {
        let Ok(cp) = backend.curve().reduce(p) else { continue };
        let Ok(jac) = JacobianFp::new(&cp) else { continue };
        if backend.usable(&jac) && two_torsion.is_none_or(|t| t.reduce_mod(&jac).is_some()) {
            return Some((p, jac, v));
        }
    }
    None
}

/// Shared inputs of a q-part computation.
pub struct QPartInput<'a, B: KummerBackend + ?Sized> {
    pub backend: &'a B,
    pub bound: &'a ReductionBound,
    pub height: &'a HeightBound,
    pub lift: LiftConfig,
    /// J(ℚ)[2]; required when q = 2, since Kummer points of order 2 are
    /// singular and cannot be lifted.
    pub two_torsion: Option<&'a TwoTorsion>,
    pub seed: u64,
}

struct Lifter<'a, B: KummerBackend + ?Sized> {
    input: &'a QPartInput<'a, B>,
    p: u64,
    jac: JacobianFp,
    group: QGroup,
    basis: SylowBasis,
    cache: HashMap<usize, bool>,
    two_torsion: Option<HashSet<JacElem>>,
    records: Vec<LiftRecord>,
    calls: usize,
}

impl<B: KummerBackend + ?Sized> Lifter<'_, B> {
    fn element(&self, x: usize) -> JacElem {
        let c = self.group.decode(x);
        let mut acc = self.jac.zero();
        for (g, k) in self.basis.gens.iter().zip(c) {
            if k != 0 {
                acc = self.jac.add(&acc, &self.jac.mul_u(g, k));
            }
        }
        acc
    }

    /// Whether the element x lifts to J(ℚ); `known` is a subgroup already
    /// known to lift.
    fn lifts(&mut self, x: usize, known: &[bool]) -> Result<bool> {
        if x == 0 {
            return Ok(true);
        }
        if let Some(&b) = self.cache.get(&x) {
            return Ok(b);
        }
        let m = self.group.order(x);
        let (lifts, via, certificate) = if known[x] {
            (true, "subgroup", None)
        } else if m == 2 {
            let red = self.two_torsion.as_ref().ok_or_else(|| Error::Internal("J(Q)[2] missing for q = 2".into()))?;
            (red.contains(&self.element(x)), "two-torsion", None)
        } else {
            self.calls += 1;
            let coords = self.input.backend.kummer_fp(&self.jac, &self.element(x))?;
            match lift_and_recognize(self.input.backend, self.p, m, &coords, self.input.height, &self.input.lift)? {
                LiftOutcome::Found(c) => (true, "lift", Some(c)),
                LiftOutcome::NotRational { .. } => (false, "lift", None),
            }
        };
        self.cache.insert(x, lifts);
        self.records.push(LiftRecord { element: self.group.decode(x), m, lifts, via: via.into(), certificate });
        Ok(lifts)
    }
}

/// The q-part of J(ℚ)_tors as invariant factors.
pub fn q_part<B: KummerBackend + ?Sized>(input: &QPartInput<'_, B>, q: u64) -> Result<QPartReport> {
    let trivial = |prime| QPartReport { q, prime, sylow: vec![], structure: vec![], lift_calls: 0, records: vec![] };
    if valuation(&input.bound.order, q) == 0 {
        return Ok(trivial(None));
    }
    let need = if q == 2 {
        Some(input.two_torsion.ok_or_else(|| Error::Internal("J(Q)[2] missing for q = 2".into()))?)
    } else {
        None
    };
    let (p, jac, v) = choose_prime(input.backend, input.bound, q, need)
        .ok_or_else(|| Error::PrimePoolExhausted(format!("no usable prime for q = {q}")))?;
    if v == 0 {
        return Ok(trivial(Some(p)));
    }
    if q.checked_pow(v).is_none_or(|s| s > MAX_SYLOW) {
        return Err(Error::Internal(format!("{q}-Sylow subgroup at p = {p} too large")));
    }
    let order = input.bound.primes.iter().find(|d| d.p == p).unwrap().order.clone();
    let mut rng = prime_rng(input.seed, p, q);
    let basis = crate::jacobian::sylow_subgroup(&jac, &order, q, &mut rng)?;
    let group = QGroup::new(q, &basis.exps);
    let two_torsion = need.and_then(|t| t.reduce_mod(&jac)).map(|v| v.into_iter().collect());
    let mut lifter =
        Lifter { input, p, jac, group: group.clone(), basis, cache: HashMap::new(), two_torsion, records: vec![], calls: 0 };

    let n = group.size;
    let mut t = vec![false; n];
    t[0] = true;
    // kernel of G₀ → Gₙ, and the preimage of Sₙ′
    let mut h = t.clone();
    let mut s_prime = t.clone();
    loop {
        let cands: Vec<usize> = (0..n).filter(|&x| !s_prime[x]).collect();
        if cands.is_empty() {
            break;
        }
        // prefer an element of largest order in Gₙ
        let g = *cands.iter().max_by_key(|&&x| (group.order_mod(x, &h), std::cmp::Reverse(x))).unwrap();
        let k = group.order(g);
        // smallest ℓ ≥ 0 with q^ℓ·g lifting; lifting is inherited by multiples
        let mut ell = 0u32;
        while q.pow(ell) < k {
            ell += 1;
        }
        while ell > 0 && lifter.lifts(group.scale(g, q.pow(ell - 1)), &t)? {
            ell -= 1;
        }
        let lifted = group.scale(g, q.pow(ell));
        t = group.closure(&t, &[lifted]);
        h = group.closure(&h, &[lifted]);
        let cyc = group.closure(&h, &[g]);
        let mut next = vec![false; n];
        for x in 0..n {
            if s_prime[x] || cyc[x] {
                next[x] = true;
            }
        }
        // close under Hₙ₊₁
        s_prime = vec![false; n];
        let hs: Vec<usize> = (0..n).filter(|&x| h[x]).collect();
        for x in (0..n).filter(|&x| next[x]) {
            for &y in &hs {
                s_prime[group.add(x, y)] = true;
            }
        }
    }
    let structure = group.structure(&t);
    Ok(QPartReport {
        q,
        prime: Some(p),
        sylow: lifter.basis.invariants().iter().map(|d| d.to_string()).collect(),
        structure: structure.iter().map(|d| d.to_string()).collect(),
        lift_calls: lifter.calls,
        records: lifter.records,
    })
}
