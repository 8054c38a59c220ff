//! Lucas `U`, `V` and Horadam `W`, `H` sequences, plus arbitrary
//! user-supplied sequences for the Fontené–Ward construction.
//!
//! Terms are produced by the recurrence `L_{n+1} = P·L_n − Q·L_{n−1}` and
//! memoized; the closed forms in Q(√D) are an independent route to the same
//! values.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::quadfield::{LucasParams, QuadraticSurd, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    /// `U_n = (pⁿ − qⁿ)/(p − q)`, starting 0, 1.
    U,
    /// `V_n = pⁿ + qⁿ`, starting 2, P.
    V,
    /// Horadam `W_n = (A·pⁿ − B·qⁿ)/(p − q)` given by its first two terms.
    HoradamW { w0: Rational, w1: Rational },
    /// Horadam `H_n = A·pⁿ + B·qⁿ` given by its first two terms.
    HoradamH { h0: Rational, h1: Rational },
    /// Explicit terms `A_0, A_1, …`.
    Custom(Vec<Rational>),
}

impl SequenceKind {
    pub fn tag(&self) -> &'static str {
        match self {
            SequenceKind::U => "u",
            SequenceKind::V => "v",
            SequenceKind::HoradamW { .. } => "w",
            SequenceKind::HoradamH { .. } => "h",
            SequenceKind::Custom(_) => "custom",
        }
    }

    fn initial_values(&self, params: &LucasParams) -> Option<(Rational, Rational)> {
        match self {
            SequenceKind::U => Some((Rational::zero(), Rational::one())),
            SequenceKind::V => Some((Rational::from(2), params.p().clone())),
            SequenceKind::HoradamW { w0, w1 } => Some((w0.clone(), w1.clone())),
            SequenceKind::HoradamH { h0, h1 } => Some((h0.clone(), h1.clone())),
            SequenceKind::Custom(_) => None,
        }
    }
}

/// A sequence together with its memo table.
///
/// The memo makes `term` take `&mut self`. To share a context across threads,
/// call [`SequenceContext::warm`] first and then use the `&self` accessors.
#[derive(Clone, Debug)]
pub struct SequenceContext {
    params: Option<LucasParams>,
    kind: SequenceKind,
    disc: BigInt,
    memo: Vec<Rational>,
    factorials: Vec<Rational>,
    roots: Option<RootPowers>,
    weights: Option<(QuadraticSurd, QuadraticSurd)>,
}

// Memoized powers p^0, p^1, … and q^0, q^1, … of the two roots.
#[derive(Clone, Debug)]
struct RootPowers {
    p: Vec<QuadraticSurd>,
    q: Vec<QuadraticSurd>,
}

impl RootPowers {
    fn new(params: &LucasParams) -> Self {
        let one = QuadraticSurd::one(params.field_disc());
        RootPowers {
            p: vec![one.clone(), params.root_p()],
            q: vec![one, params.root_q()],
        }
    }

    fn extend(&mut self, n: usize) {
        while self.p.len() <= n {
            let next_p = &self.p[self.p.len() - 1] * &self.p[1];
            let next_q = &self.q[self.q.len() - 1] * &self.q[1];
            self.p.push(next_p);
            self.q.push(next_q);
        }
    }
}

impl SequenceContext {
    pub fn new(params: LucasParams, kind: SequenceKind) -> Result<Self> {
        if let SequenceKind::Custom(values) = kind {
            return Self::custom(values);
        }
        let (a0, a1) = kind.initial_values(&params).expect("recurrence kind");
        let mut ctx = SequenceContext {
            disc: params.field_disc().clone(),
            roots: Some(RootPowers::new(&params)),
            params: Some(params),
            kind,
            memo: vec![a0, a1],
            factorials: vec![Rational::one()],
            weights: None,
        };
        ctx.weights = Some(ctx.solve_weights()?);
        Ok(ctx)
    }

    /// A context over explicit terms. Coefficients for such a sequence are
    /// rational, so its field is Q itself (radicand 1).
    pub fn custom(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::IndexOutOfRange { index: 0, len: 0 });
        }
        Ok(SequenceContext {
            params: None,
            kind: SequenceKind::Custom(values.clone()),
            disc: BigInt::from(1),
            memo: values,
            factorials: vec![Rational::one()],
            roots: None,
            weights: None,
        })
    }

    pub fn params(&self) -> Option<&LucasParams> {
        self.params.as_ref()
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    /// Radicand of the field all surds for this context live in.
    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn embed(&self, x: &Rational) -> QuadraticSurd {
        QuadraticSurd::from_rational(x.clone(), &self.disc)
    }

    pub fn is_custom(&self) -> bool {
        self.params.is_none()
    }

    /// The roots `(p, q)`; unavailable for custom sequences.
    pub fn roots(&self) -> Result<(QuadraticSurd, QuadraticSurd)> {
        let roots = self.root_table()?;
        Ok((roots.p[1].clone(), roots.q[1].clone()))
    }

    fn root_table(&self) -> Result<&RootPowers> {
        self.roots.as_ref().ok_or_else(|| Error::IncompatibleRule {
            rule: "closed form".into(),
            kind: self.kind.tag().into(),
        })
    }

    /// `(pⁿ, qⁿ)`, memoized.
    pub fn root_powers(&mut self, n: usize) -> Result<(&QuadraticSurd, &QuadraticSurd)> {
        self.root_table()?;
        let roots = self.roots.as_mut().expect("checked above");
        roots.extend(n);
        Ok((&roots.p[n], &roots.q[n]))
    }

    pub fn term(&mut self, n: usize) -> Result<Rational> {
        self.warm(n)?;
        Ok(self.memo[n].clone())
    }

    /// Ensure terms `0..=n` are memoized.
    pub fn warm(&mut self, n: usize) -> Result<()> {
        let Some(params) = &self.params else {
            return if n < self.memo.len() {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange {
                    index: n,
                    len: self.memo.len(),
                })
            };
        };
        while self.memo.len() <= n {
            let k = self.memo.len();
            let next = params.p() * &self.memo[k - 1] - params.q() * &self.memo[k - 2];
            self.memo.push(next);
        }
        Ok(())
    }

    /// A memoized term, if already computed.
    pub fn cached(&self, n: usize) -> Option<&Rational> {
        self.memo.get(n)
    }

    pub fn terms(&mut self, n_max: usize) -> Result<Vec<Rational>> {
        self.warm(n_max)?;
        Ok(self.memo[..=n_max].to_vec())
    }

    /// Smallest `m` in `1..=n` with `L_m = 0`.
    pub fn first_vanishing(&mut self, n: usize) -> Result<Option<usize>> {
        self.warm(n)?;
        Ok((1..=n).find(|&m| self.memo[m].is_zero()))
    }

    /// `L_n! = L_n·L_{n−1}·…·L_1`, with `L_0! = 1`.
    pub fn factorial(&mut self, n: usize) -> Result<Rational> {
        self.warm(n)?;
        while self.factorials.len() <= n {
            let k = self.factorials.len();
            let next = &self.factorials[k - 1] * &self.memo[k];
            self.factorials.push(next);
        }
        Ok(self.factorials[n].clone())
    }

    /// Weights `(A, B)` of the closed form. `U` and `V` have `A = B = 1`;
    /// Horadam weights are solved from the two initial values.
    pub fn closed_form_weights(&self) -> Result<(QuadraticSurd, QuadraticSurd)> {
        match &self.weights {
            Some(w) => Ok(w.clone()),
            None => self.solve_weights(),
        }
    }

    fn solve_weights(&self) -> Result<(QuadraticSurd, QuadraticSurd)> {
        let (p, q) = self.roots()?;
        let one = QuadraticSurd::one(&self.disc);
        match &self.kind {
            SequenceKind::U | SequenceKind::V => Ok((one.clone(), one)),
            SequenceKind::HoradamW { w0, w1 } => {
                // W_0 (p − q) = A − B and W_1 (p − q) = A·p − B·q.
                let w1 = self.embed(w1);
                Ok((&w1 - &q.scale(w0), &w1 - &p.scale(w0)))
            }
            SequenceKind::HoradamH { h0, h1 } => {
                let h1 = self.embed(h1);
                let diff = &p - &q;
                let a = (&h1 - &q.scale(h0)).checked_div(&diff)?;
                let b = (&p.scale(h0) - &h1).checked_div(&diff)?;
                Ok((a, b))
            }
            SequenceKind::Custom(_) => unreachable!("roots() rejects custom sequences"),
        }
    }

    /// The n-th term evaluated from the closed form in Q(√D).
    pub fn term_closed_form(&self, n: usize) -> Result<Rational> {
        self.term_closed_form_surd(n)?.as_rational()
    }

    pub(crate) fn term_closed_form_surd(&self, n: usize) -> Result<QuadraticSurd> {
        let (p, q) = self.roots()?;
        let (a, b) = self.closed_form_weights()?;
        let pn = &a * &p.pow(n as u64);
        let qn = &b * &q.pow(n as u64);
        match self.kind {
            SequenceKind::U | SequenceKind::HoradamW { .. } => (&pn - &qn).checked_div(&(&p - &q)),
            SequenceKind::V | SequenceKind::HoradamH { .. } => Ok(&pn + &qn),
            SequenceKind::Custom(_) => unreachable!("roots() rejects custom sequences"),
        }
    }
}

/// Solve for the closed-form weights `(A, B)` of a Horadam context.
pub fn derive_closed_form_weights(ctx: &SequenceContext) -> Result<(QuadraticSurd, QuadraticSurd)> {
    match ctx.kind() {
        SequenceKind::HoradamW { .. } | SequenceKind::HoradamH { .. } => ctx.closed_form_weights(),
        other => Err(Error::IncompatibleRule {
            rule: "closed-form weights".into(),
            kind: other.tag().into(),
        }),
    }
}

/// Both sides of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `2V_{r+s}` against the printed right-hand side `V_rV_s + U_sU_r` and the
/// discriminant-corrected one `V_rV_s + D·U_rU_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VAdditionCheck {
    pub lhs: Rational,
    pub printed: Rational,
    pub corrected: Rational,
}

impl VAdditionCheck {
    pub fn printed_holds(&self) -> bool {
        self.lhs == self.printed
    }

    pub fn corrected_holds(&self) -> bool {
        self.lhs == self.corrected
    }
}

/// `L_{r+s} = L_r·V_s − Q^s·L_{r−s}` for `L = U` and `L = V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftCheck {
    pub u: IdentityCheck,
    pub v: IdentityCheck,
}

impl ShiftCheck {
    pub fn holds(&self) -> bool {
        self.u.holds() && self.v.holds()
    }
}

/// The companion sequences `U` and `V` for one parameter set.
#[derive(Clone, Debug)]
pub struct LucasPair {
    pub u: SequenceContext,
    pub v: SequenceContext,
}

impl LucasPair {
    pub fn new(params: LucasParams) -> Result<Self> {
        Ok(LucasPair {
            u: SequenceContext::new(params.clone(), SequenceKind::U)?,
            v: SequenceContext::new(params, SequenceKind::V)?,
        })
    }

    pub fn params(&self) -> &LucasParams {
        self.u.params().expect("lucas pair has parameters")
    }

    /// `2U_{r+s} = U_rV_s + U_sV_r`
    pub fn check_addition_u(&mut self, r: usize, s: usize) -> Result<IdentityCheck> {
        let two = Rational::from(2);
        let lhs = two * self.u.term(r + s)?;
        let rhs = self.u.term(r)? * self.v.term(s)? + self.u.term(s)? * self.v.term(r)?;
        Ok(IdentityCheck { lhs, rhs })
    }

    pub fn check_addition_v(&mut self, r: usize, s: usize) -> Result<VAdditionCheck> {
        let two = Rational::from(2);
        let lhs = two * self.v.term(r + s)?;
        let vv = self.v.term(r)? * self.v.term(s)?;
        let uu = self.u.term(r)? * self.u.term(s)?;
        let d = self.params().discriminant().clone();
        Ok(VAdditionCheck {
            lhs,
            printed: &vv + &uu,
            corrected: vv + d * uu,
        })
    }

    /// The shift rules with the `pⁿqⁿ` factor read as `(pq)^s = Q^s`.
    pub fn check_shift_identities(&mut self, r: usize, s: usize) -> Result<ShiftCheck> {
        if r < s {
            return Err(Error::IndexOutOfRange {
                index: s,
                len: r + 1,
            });
        }
        let qs = self.params().q().pow(s as u32);
        let vs = self.v.term(s)?;
        let u = IdentityCheck {
            lhs: self.u.term(r + s)?,
            rhs: self.u.term(r)? * &vs - &qs * self.u.term(r - s)?,
        };
        let v = IdentityCheck {
            lhs: self.v.term(r + s)?,
            rhs: self.v.term(r)? * &vs - &qs * self.v.term(r - s)?,
        };
        Ok(ShiftCheck { u, v })
    }
}
