//! Mod-2 cohomology of `P_n̄` and the numerical bounds it certifies.
//!
//! `H*(P_n̄; Z2)` has the monomial basis `a^e · Π a_q^{ε_q}` with
//! `0 ≤ e ≤ n1` and `ε_q ∈ {0, 1}`; `deg a = 1`, `deg a_q = n_q`. The `a_q`
//! anticommute, which over `Z2` is commutation, and square to zero, except
//! when `n1` is even and `n1 = n2 = ... = nκ`: then `a_q² = a^{n1}·a_q` for
//! `2 ≤ q ≤ κ`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quotient::Shape;
use crate::tc::tc_sphere;

/// `a^e · Π_{bit q-2 of mask} a_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub e: usize,
    pub mask: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e: 0, mask: 0 };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum RelationMode {
    Exterior,
    /// `a_q² = a^{n1} a_q` for factors `2 ≤ q ≤ kappa`.
    DavisEvenBlock {
        kappa: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod2Ring {
    shape: Shape,
    mode: RelationMode,
    extrapolated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    shape: Shape,
    support: BTreeSet<Monomial>,
}

impl RingElement {
    pub fn support(&self) -> &BTreeSet<Monomial> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Sum over `Z2`: symmetric difference of supports.
    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        if self.shape != other.shape {
            return Err(Error::RingMismatch);
        }
        Ok(RingElement {
            shape: self.shape.clone(),
            support: self
                .support
                .symmetric_difference(&other.support)
                .copied()
                .collect(),
        })
    }
}

impl Mod2Ring {
    pub fn new(shape: Shape) -> Result<Self> {
        if shape.r() > 64 {
            return Err(Error::InvalidShape("at most 64 factors".into()));
        }
        let n1 = shape.n1();
        let kappa = shape.dims().iter().take_while(|&&n| n == n1).count();
        let (mode, extrapolated) = if n1.is_multiple_of(2) && kappa > 1 {
            // With no strictly larger factor the block relation is applied
            // to every factor.
            (RelationMode::DavisEvenBlock { kappa }, kappa == shape.r())
        } else {
            (RelationMode::Exterior, false)
        };
        Ok(Self {
            shape,
            mode,
            extrapolated,
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn mode(&self) -> RelationMode {
        self.mode
    }

    /// Whether the even-block relation was applied with no larger factor
    /// following the block.
    pub fn extrapolated(&self) -> bool {
        self.extrapolated
    }

    pub fn basis(&self) -> Vec<Monomial> {
        let r = self.shape.r();
        (0..=self.shape.n1())
            .flat_map(|e| (0..1u64 << (r - 1)).map(move |mask| Monomial { e, mask }))
            .collect()
    }

    pub fn degree(&self, m: Monomial) -> usize {
        m.e + self
            .shape
            .tail()
            .filter(|(q, _)| m.mask >> (q - 1) & 1 == 1)
            .map(|(_, n)| n)
            .sum::<usize>()
    }

    fn in_block(&self, bit: usize) -> bool {
        match self.mode {
            RelationMode::Exterior => false,
            // bit 0 is a_2
            RelationMode::DavisEvenBlock { kappa } => bit + 2 <= kappa,
        }
    }

    /// Product of basis monomials; `None` when it vanishes.
    pub fn mul_monomial(&self, a: Monomial, b: Monomial) -> Option<Monomial> {
        let n1 = self.shape.n1();
        let mut e = a.e + b.e;
        let both = a.mask & b.mask;
        for bit in 0..self.shape.r() - 1 {
            if both >> bit & 1 == 1 {
                if self.in_block(bit) {
                    e += n1;
                } else {
                    return None;
                }
            }
        }
        (e <= n1).then_some(Monomial {
            e,
            mask: a.mask | b.mask,
        })
    }

    pub fn element(&self, support: impl IntoIterator<Item = Monomial>) -> RingElement {
        let mut set = BTreeSet::new();
        for m in support {
            if !set.remove(&m) {
                set.insert(m);
            }
        }
        RingElement {
            shape: self.shape.clone(),
            support: set,
        }
    }

    pub fn one(&self) -> RingElement {
        self.element([Monomial::ONE])
    }

    /// Generator `a` for `q = 1`, `a_q` for `2 ≤ q ≤ r` (1-based).
    pub fn generator(&self, q: usize) -> RingElement {
        self.element([generator_monomial(q)])
    }

    pub fn multiply(&self, u: &RingElement, v: &RingElement) -> Result<RingElement> {
        if u.shape != self.shape || v.shape != self.shape {
            return Err(Error::RingMismatch);
        }
        Ok(self.element(u.support.iter().flat_map(|&a| {
            v.support
                .iter()
                .filter_map(move |&b| self.mul_monomial(a, b))
        })))
    }

    /// Longest nonzero product of generators, with one witness as a list of
    /// 1-based generator indices.
    pub fn cuplength(&self) -> (usize, Vec<usize>) {
        let mut memo = HashMap::new();
        let (len, witness) = self.longest_from(Monomial::ONE, &mut memo);
        (len, witness)
    }

    fn longest_from(
        &self,
        m: Monomial,
        memo: &mut HashMap<Monomial, (usize, Vec<usize>)>,
    ) -> (usize, Vec<usize>) {
        if let Some(hit) = memo.get(&m) {
            return hit.clone();
        }
        let mut best = (0, Vec::new());
        for q in 1..=self.shape.r() {
            if let Some(next) = self.mul_monomial(m, generator_monomial(q)) {
                let (len, mut tail) = self.longest_from(next, memo);
                if len + 1 > best.0 {
                    tail.insert(0, q);
                    best = (len + 1, tail);
                }
            }
        }
        memo.insert(m, best.clone());
        best
    }
}

fn generator_monomial(q: usize) -> Monomial {
    assert!((1..=64).contains(&q), "generator index out of range");
    if q == 1 {
        Monomial { e: 1, mask: 0 }
    } else {
        Monomial {
            e: 0,
            mask: 1 << (q - 2),
        }
    }
}

/// An element of `H* ⊗ H*`, as a set of basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    support: BTreeSet<(Monomial, Monomial)>,
}

impl TensorElement {
    pub fn support(&self) -> &BTreeSet<(Monomial, Monomial)> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }
}

impl Mod2Ring {
    fn tensor(&self, terms: impl IntoIterator<Item = (Monomial, Monomial)>) -> TensorElement {
        let mut set = BTreeSet::new();
        for t in terms {
            if !set.remove(&t) {
                set.insert(t);
            }
        }
        TensorElement { support: set }
    }

    pub fn tensor_one(&self) -> TensorElement {
        self.tensor([(Monomial::ONE, Monomial::ONE)])
    }

    /// The zero-divisor `g ⊗ 1 + 1 ⊗ g` for generator `q` (1-based).
    pub fn zero_divisor(&self, q: usize) -> TensorElement {
        let g = generator_monomial(q);
        self.tensor([(g, Monomial::ONE), (Monomial::ONE, g)])
    }

    pub fn tensor_mul(&self, u: &TensorElement, v: &TensorElement) -> TensorElement {
        self.tensor(u.support.iter().flat_map(|&(a, b)| {
            v.support.iter().filter_map(move |&(c, d)| {
                Some((self.mul_monomial(a, c)?, self.mul_monomial(b, d)?))
            })
        }))
    }
}

/// Row `m` of Pascal's triangle reduced mod 2.
pub fn pascal_row_mod2(m: usize) -> Vec<bool> {
    let mut row = vec![true];
    for _ in 0..m {
        let mut next = vec![true; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] ^ row[i];
        }
        row = next;
    }
    row
}

/// Largest `m` with `(a ⊗ 1 + 1 ⊗ a)^m ≠ 0` in `H*(P^n)^{⊗2}`: some
/// `i ≤ n` with `m - i ≤ n` and `C(m, i)` odd.
pub fn zcl_projective(n: usize) -> usize {
    (0..=2 * n)
        .rev()
        .find(|&m| {
            let row = pascal_row_mod2(m);
            (m.saturating_sub(n)..=n.min(m)).any(|i| row[i])
        })
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZclCertificate {
    /// `zcl(P^{n1})`.
    pub projective: usize,
    pub value: usize,
    /// Number of basis terms in the expanded witness product.
    pub witness_terms: usize,
}

/// `zcl(P^{n1}) + r - 1`, certified by expanding
/// `ā^h · Π_{q≥2} ā_q ≠ 0` in the tensor square.
pub fn zcl_lower(shape: &Shape) -> Result<ZclCertificate> {
    let ring = Mod2Ring::new(shape.clone())?;
    let h = zcl_projective(shape.n1());
    let abar = ring.zero_divisor(1);
    let mut w = ring.tensor_one();
    for _ in 0..h {
        w = ring.tensor_mul(&w, &abar);
    }
    for q in 2..=shape.r() {
        w = ring.tensor_mul(&w, &ring.zero_divisor(q));
    }
    assert!(!w.is_zero(), "zero-divisor witness vanished for {shape}");
    Ok(ZclCertificate {
        projective: h,
        value: h + shape.r() - 1,
        witness_terms: w.support.len(),
    })
}

/// Built-in `TC(P^n)` values for small `n`.
pub fn default_tc_pn1(n1: usize) -> Option<usize> {
    match n1 {
        1 => Some(1),
        2 => Some(3),
        3 => Some(3),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub nbar: Shape,
    pub r: usize,
    pub even_count: usize,
    pub tc_pn1: usize,
    pub cat: usize,
    pub cuplength: usize,
    pub tc_upper_new: usize,
    pub tc_upper_ggtx: usize,
    pub zcl_pn1: usize,
    pub zcl_lower: usize,
    pub equality_flag: bool,
    pub tc_exact: Option<usize>,
    pub relation_mode: RelationMode,
    pub davis_extrapolated: bool,
}

/// The LS-category, the planner's TC upper bound, the older product-type
/// bound `(TC(P^{n1}) + 1)(r + even_count) - 1`, and the zero-divisor lower
/// bound for `P_n̄`.
pub fn bounds_report(shape: &Shape, tc_pn1: Option<usize>) -> Result<BoundsReport> {
    let n1 = shape.n1();
    let tc_pn1 = match tc_pn1.or_else(|| default_tc_pn1(n1)) {
        Some(t) => t,
        None => return Err(Error::MissingTcInput(n1)),
    };
    let zcl = zcl_lower(shape)?;
    if tc_pn1 < zcl.projective {
        return Err(Error::InvalidTcInput {
            n1,
            given: tc_pn1,
            zcl: zcl.projective,
        });
    }
    let ring = Mod2Ring::new(shape.clone())?;
    let r = shape.r();
    let even_count = shape.even_count();
    let tc_upper_new = tc_pn1 + shape.tail().map(|(_, n)| tc_sphere(n)).sum::<usize>();
    debug_assert_eq!(tc_upper_new, tc_pn1 + r + even_count - 1);
    let equality_flag = zcl.projective == tc_pn1 && even_count == 0;
    Ok(BoundsReport {
        nbar: shape.clone(),
        r,
        even_count,
        tc_pn1,
        cat: n1 + r - 1,
        cuplength: ring.cuplength().0,
        tc_upper_new,
        tc_upper_ggtx: (tc_pn1 + 1) * (r + even_count) - 1,
        zcl_pn1: zcl.projective,
        zcl_lower: zcl.value,
        equality_flag,
        tc_exact: equality_flag.then_some(tc_pn1 + r - 1),
        relation_mode: ring.mode(),
        davis_extrapolated: ring.extrapolated(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingReport {
    pub nbar: Shape,
    pub relation_mode: RelationMode,
    pub basis_size: usize,
    pub triples_checked: usize,
    pub associativity_failures: usize,
    pub commutativity_failures: usize,
    pub block_relation_ok: Option<bool>,
    pub cuplength: usize,
    pub cuplength_witness: Vec<usize>,
    pub cuplength_expected: usize,
    pub zcl_lower: usize,
    pub zcl_single_factor: usize,
    pub pass: bool,
}

/// Exhaustive triples up to this basis size; beyond it, a seeded sample of
/// the same number of triples.
pub const EXHAUSTIVE_BASIS_LIMIT: usize = 200;

/// Ring axioms on basis monomials, the block relation, cup-length and the
/// zero-divisor formula.
pub fn verify_ring(shape: &Shape, seed: u64) -> Result<RingReport> {
    use crate::sampling::{sample_rng, Stream};
    use rand::Rng;

    let ring = Mod2Ring::new(shape.clone())?;
    let basis = ring.basis();
    let b = basis.len();
    let single = |m: Monomial| ring.element([m]);

    let triples: Vec<(usize, usize, usize)> = if b <= EXHAUSTIVE_BASIS_LIMIT {
        (0..b)
            .flat_map(|i| (0..b).flat_map(move |j| (0..b).map(move |k| (i, j, k))))
            .collect()
    } else {
        let limit = EXHAUSTIVE_BASIS_LIMIT.pow(3);
        (0..limit)
            .map(|t| {
                let mut rng = sample_rng(seed, Stream::Ring, t as u64);
                (
                    rng.random_range(0..b),
                    rng.random_range(0..b),
                    rng.random_range(0..b),
                )
            })
            .collect()
    };
    let (mut assoc, mut comm) = (0, 0);
    for &(i, j, k) in &triples {
        let (x, y, z) = (single(basis[i]), single(basis[j]), single(basis[k]));
        let xy = ring.multiply(&x, &y)?;
        if xy != ring.multiply(&y, &x)? {
            comm += 1;
        }
        if ring.multiply(&xy, &z)? != ring.multiply(&x, &ring.multiply(&y, &z)?)? {
            assoc += 1;
        }
    }

    let block_relation_ok = match ring.mode() {
        RelationMode::Exterior => None,
        RelationMode::DavisEvenBlock { kappa } => Some((2..=kappa).all(|q| {
            let aq = ring.generator(q);
            let mut rhs = aq.clone();
            for _ in 0..shape.n1() {
                rhs = ring.multiply(&rhs, &ring.generator(1)).expect("same ring");
            }
            ring.multiply(&aq, &aq).expect("same ring") == rhs && !rhs.is_zero()
        })),
    };

    let (cuplength, witness) = ring.cuplength();
    let expected = shape.n1() + shape.r() - 1;
    let zcl = zcl_lower(shape)?.value;
    let zcl_single = zcl_lower(&Shape::new(vec![shape.n1()])?)?.value;
    Ok(RingReport {
        nbar: shape.clone(),
        relation_mode: ring.mode(),
        basis_size: b,
        triples_checked: triples.len(),
        associativity_failures: assoc,
        commutativity_failures: comm,
        block_relation_ok,
        cuplength,
        cuplength_witness: witness,
        cuplength_expected: expected,
        zcl_lower: zcl,
        zcl_single_factor: zcl_single,
        pass: assoc == 0
            && comm == 0
            && block_relation_ok != Some(false)
            && cuplength == expected
            && zcl == zcl_single + shape.r() - 1,
    })
}
