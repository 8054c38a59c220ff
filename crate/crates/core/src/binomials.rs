//! Generalized binomial and multinomial coefficients over a sequence `L`.
//!
//! Two independent routes produce every coefficient:
//!
//! * the factorial definition `L_n! / (L_k!·L_{n−k}!)`, evaluated with
//!   rationals only, which serves as the oracle;
//! * the Pascal-like recurrence
//!   `C(r+s; r,s) = g1·C(r+s−1; r−1,s) + g2·C(r+s−1; r,s−1)` with
//!   boundary `C(r; r,0) = C(s; 0,s) = 1`, evaluated in Q(√D), where the
//!   site-dependent pair `(g1, g2)` must satisfy `L_{r+s} = g1·L_r + g2·L_s`.
//!
//! Four families of pairs are provided: the `U` pairs `(p^s, q^r)` and
//! `(q^s, p^r)`, the `V` (and Horadam `H`) pairs from the linear solve in
//! `p` and `q` with the special form at `r = s`, and the two Fontené pairs
//! that apply to any sequence.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quadfield::{LucasParams, QuadraticSurd, Rational};
use crate::sequences::{IdentityCheck, SequenceContext, SequenceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UVariant {
    /// `(g1, g2) = (p^s, q^r)`
    Primary,
    /// `(g1, g2) = (q^s, p^r)`
    Swapped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FonteneVariant {
    /// `(1, (A_{r+s} − A_r)/A_s)`
    Left,
    /// `((A_{r+s} − A_s)/A_r, 1)`
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffRule {
    U(UVariant),
    V,
    Fontene(FonteneVariant),
    HoradamH,
}

impl CoeffRule {
    pub const ALL: [CoeffRule; 6] = [
        CoeffRule::U(UVariant::Primary),
        CoeffRule::U(UVariant::Swapped),
        CoeffRule::V,
        CoeffRule::Fontene(FonteneVariant::Left),
        CoeffRule::Fontene(FonteneVariant::Right),
        CoeffRule::HoradamH,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CoeffRule::U(UVariant::Primary) => "u-primary",
            CoeffRule::U(UVariant::Swapped) => "u-swapped",
            CoeffRule::V => "v",
            CoeffRule::Fontene(FonteneVariant::Left) => "fontene-left",
            CoeffRule::Fontene(FonteneVariant::Right) => "fontene-right",
            CoeffRule::HoradamH => "horadam-h",
        }
    }

    /// The natural rule for a sequence kind.
    pub fn default_for(kind: &SequenceKind) -> CoeffRule {
        match kind {
            SequenceKind::U => CoeffRule::U(UVariant::Primary),
            SequenceKind::V => CoeffRule::V,
            SequenceKind::HoradamH { .. } => CoeffRule::HoradamH,
            SequenceKind::HoradamW { .. } | SequenceKind::Custom(_) => {
                CoeffRule::Fontene(FonteneVariant::Left)
            }
        }
    }

    pub fn applies_to(&self, kind: &SequenceKind) -> bool {
        match self {
            CoeffRule::U(_) => matches!(kind, SequenceKind::U),
            CoeffRule::V => matches!(kind, SequenceKind::V),
            CoeffRule::HoradamH => matches!(kind, SequenceKind::V | SequenceKind::HoradamH { .. }),
            CoeffRule::Fontene(_) => true,
        }
    }

    fn ensure_applies(&self, kind: &SequenceKind) -> Result<()> {
        if self.applies_to(kind) {
            Ok(())
        } else {
            Err(Error::IncompatibleRule {
                rule: self.name().into(),
                kind: kind.tag().into(),
            })
        }
    }
}

impl fmt::Display for CoeffRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoeffRule {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CoeffRule::ALL
            .into_iter()
            .find(|rule| rule.name() == s)
            .ok_or_else(|| format!("unknown coefficient rule `{s}`"))
    }
}

/// How a triangle's entries were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Factorial,
    Recurrence(CoeffRule),
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::Factorial => "factorial",
            Route::Recurrence(rule) => rule.name(),
        }
    }
}

impl FromStr for Route {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "factorial" {
            Ok(Route::Factorial)
        } else {
            s.parse().map(Route::Recurrence)
        }
    }
}

impl Serialize for Route {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Route {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Multipliers `(g1, g2)` attached to the lattice site `(r, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientPair {
    pub g1: QuadraticSurd,
    pub g2: QuadraticSurd,
    pub r: usize,
    pub s: usize,
}

impl CoefficientPair {
    /// `(g1·L_r + g2·L_s, L_{r+s})` evaluated in the field.
    pub fn contract_sides(
        &self,
        ctx: &mut SequenceContext,
    ) -> Result<(QuadraticSurd, QuadraticSurd)> {
        let (lr, ls, lrs) = (
            ctx.term(self.r)?,
            ctx.term(self.s)?,
            ctx.term(self.r + self.s)?,
        );
        let (lr, ls, lrs) = (ctx.embed(&lr), ctx.embed(&ls), ctx.embed(&lrs));
        let lhs = (&self.g1 * &lr).checked_add(&(&self.g2 * &ls))?;
        Ok((lhs, lrs))
    }

    pub fn satisfies_contract(&self, ctx: &mut SequenceContext) -> Result<bool> {
        let (lhs, rhs) = self.contract_sides(ctx)?;
        Ok(lhs == rhs)
    }

    pub fn sum(&self) -> QuadraticSurd {
        &self.g1 + &self.g2
    }
}

fn check_index(n: usize, k: usize) -> Result<()> {
    if k > n {
        Err(Error::IndexOutOfRange {
            index: k,
            len: n + 1,
        })
    } else {
        Ok(())
    }
}

fn ensure_nondegenerate(ctx: &mut SequenceContext, n: usize) -> Result<()> {
    match ctx.first_vanishing(n)? {
        Some(index) => Err(Error::DegenerateSequence { index }),
        None => Ok(()),
    }
}

/// `L_n!/(L_k!·L_{n−k}!)` as the falling factorial `L_n·…·L_{n−k+1}` over `L_k!`.
pub fn factorial_binomial(ctx: &mut SequenceContext, n: usize, k: usize) -> Result<Rational> {
    check_index(n, k)?;
    ensure_nondegenerate(ctx, n)?;
    let mut falling = Rational::one();
    for m in (n - k + 1)..=n {
        falling = falling * ctx.term(m)?;
    }
    falling.checked_div(&ctx.factorial(k)?)
}

/// `L_n!/∏ L_{k_i}!`, or zero when the parts do not sum to `n`.
pub fn multinomial(ctx: &mut SequenceContext, n: usize, parts: &[usize]) -> Result<Rational> {
    if parts.iter().sum::<usize>() != n {
        return Ok(Rational::zero());
    }
    ensure_nondegenerate(ctx, n)?;
    let mut denom = Rational::one();
    for &part in parts {
        denom = denom * ctx.factorial(part)?;
    }
    ctx.factorial(n)?.checked_div(&denom)
}

/// `C(n,k)·C(n−k; parts) = C(n; k, parts)`
pub fn check_multinomial_product(
    ctx: &mut SequenceContext,
    n: usize,
    k: usize,
    parts: &[usize],
) -> Result<IdentityCheck> {
    let lhs = factorial_binomial(ctx, n, k)? * multinomial(ctx, n - k, parts)?;
    let mut all = Vec::with_capacity(parts.len() + 1);
    all.push(k);
    all.extend_from_slice(parts);
    let rhs = multinomial(ctx, n, &all)?;
    Ok(IdentityCheck { lhs, rhs })
}

fn check_site(r: usize, s: usize) -> Result<()> {
    if r == 0 || s == 0 {
        Err(Error::IndexOutOfRange { index: 0, len: 0 })
    } else {
        Ok(())
    }
}

/// Pair for `U`, from `U_{r+s} = p^s·U_r + q^r·U_s` (and its `p ↔ q` image).
pub fn u_coeffs(
    ctx: &mut SequenceContext,
    r: usize,
    s: usize,
    variant: UVariant,
) -> Result<CoefficientPair> {
    check_site(r, s)?;
    CoeffRule::U(variant).ensure_applies(ctx.kind())?;
    let (ps, qs) = clone_pair(ctx.root_powers(s)?);
    let (pr, qr) = clone_pair(ctx.root_powers(r)?);
    let (g1, g2) = match variant {
        UVariant::Primary => (ps, qr),
        UVariant::Swapped => (qs, pr),
    };
    Ok(CoefficientPair { g1, g2, r, s })
}

/// The `U` pairs with the exponents attached the other way round,
/// `(p^r, q^s)` and `(q^r, p^s)`. These fail the linear contract for
/// `r ≠ s` and are kept only for the diagnostic sweep.
pub fn u_coeffs_exponent_swapped(
    ctx: &mut SequenceContext,
    r: usize,
    s: usize,
    variant: UVariant,
) -> Result<CoefficientPair> {
    check_site(r, s)?;
    let (ps, qs) = clone_pair(ctx.root_powers(s)?);
    let (pr, qr) = clone_pair(ctx.root_powers(r)?);
    let (g1, g2) = match variant {
        UVariant::Primary => (pr, qs),
        UVariant::Swapped => (qr, ps),
    };
    Ok(CoefficientPair { g1, g2, r, s })
}

fn clone_pair((a, b): (&QuadraticSurd, &QuadraticSurd)) -> (QuadraticSurd, QuadraticSurd) {
    (a.clone(), b.clone())
}

// Shared by V and H: for r ≠ s solve h1·p^r + h2·p^s = p^{r+s} and
// h1·q^r + h2·q^s = q^{r+s}; for r = s use the weighted split of L_{2r}.
fn companion_coeffs(
    ctx: &mut SequenceContext,
    r: usize,
    s: usize,
    weights: (QuadraticSurd, QuadraticSurd),
) -> Result<CoefficientPair> {
    let singular = || Error::SingularCoefficient { r, s };
    let (pr, qr) = clone_pair(ctx.root_powers(r)?);
    let (ps, qs) = clone_pair(ctx.root_powers(s)?);
    let (prs, qrs) = clone_pair(ctx.root_powers(r + s)?);
    if r != s {
        let det = &(&pr * &qs) - &(&qr * &ps);
        if det.is_zero() {
            return Err(singular());
        }
        let h1 = (&(&prs * &qs) - &(&qrs * &ps)).checked_div(&det)?;
        let neg_det = -&det;
        let h2 = (&(&prs * &qr) - &(&qrs * &pr)).checked_div(&neg_det)?;
        return Ok(CoefficientPair {
            g1: h1,
            g2: h2,
            r,
            s,
        });
    }
    let (a, b) = weights;
    let ap = &a * &pr;
    let bq = &b * &qr;
    let denom = &ap + &bq;
    if denom.is_zero() {
        return Err(singular());
    }
    let h1 = (&ap * &pr).checked_div(&denom)?;
    let h2 = (&bq * &qr).checked_div(&denom)?;
    Ok(CoefficientPair {
        g1: h1,
        g2: h2,
        r,
        s,
    })
}

/// Pair for `V`. At `r = s` this is `(p^{2r}/V_r, q^{2r}/V_r)`, each a genuine
/// surd; only the sum `V_{2r}/V_r` is rational.
pub fn v_coeffs(ctx: &mut SequenceContext, r: usize, s: usize) -> Result<CoefficientPair> {
    check_site(r, s)?;
    CoeffRule::V.ensure_applies(ctx.kind())?;
    let params: &LucasParams = ctx.params().expect("V sequences carry parameters");
    if r == s && params.p().is_zero() {
        return Err(Error::SingularCoefficient { r, s });
    }
    let one = QuadraticSurd::one(ctx.disc());
    companion_coeffs(ctx, r, s, (one.clone(), one))
}

/// Pair for Horadam `H_n = A·pⁿ + B·qⁿ`: the `V` linear solve for `r ≠ s`,
/// `(A·p^{2r}, B·q^{2r})/(A·p^r + B·q^r)` at `r = s`.
pub fn horadam_h_coeffs(ctx: &mut SequenceContext, r: usize, s: usize) -> Result<CoefficientPair> {
    check_site(r, s)?;
    CoeffRule::HoradamH.ensure_applies(ctx.kind())?;
    let weights = ctx.closed_form_weights()?;
    companion_coeffs(ctx, r, s, weights)
}

pub fn fontene_coeffs(
    ctx: &mut SequenceContext,
    r: usize,
    s: usize,
    variant: FonteneVariant,
) -> Result<CoefficientPair> {
    check_site(r, s)?;
    let singular = Error::SingularCoefficient { r, s };
    let ar = ctx.term(r)?;
    let as_ = ctx.term(s)?;
    let ars = ctx.term(r + s)?;
    let one = QuadraticSurd::one(ctx.disc());
    let (g1, g2) = match variant {
        FonteneVariant::Left => {
            let g2 = (&ars - &ar).checked_div(&as_).map_err(|_| singular)?;
            (one, ctx.embed(&g2))
        }
        FonteneVariant::Right => {
            let g1 = (&ars - &as_).checked_div(&ar).map_err(|_| singular)?;
            (ctx.embed(&g1), one)
        }
    };
    Ok(CoefficientPair { g1, g2, r, s })
}

/// `((A_{r+s} − A_s)/A_r)·A_r + A_s` against `A_{r+s}`.
pub fn check_fontene_tautology(
    ctx: &mut SequenceContext,
    r: usize,
    s: usize,
) -> Result<IdentityCheck> {
    let pair = fontene_coeffs(ctx, r, s, FonteneVariant::Right)?;
    let g1 = pair.g1.as_rational()?;
    let lhs = g1 * ctx.term(r)? + ctx.term(s)?;
    Ok(IdentityCheck {
        lhs,
        rhs: ctx.term(r + s)?,
    })
}

pub fn coefficient_pair(
    ctx: &mut SequenceContext,
    rule: CoeffRule,
    r: usize,
    s: usize,
) -> Result<CoefficientPair> {
    match rule {
        CoeffRule::U(variant) => u_coeffs(ctx, r, s, variant),
        CoeffRule::V => v_coeffs(ctx, r, s),
        CoeffRule::HoradamH => horadam_h_coeffs(ctx, r, s),
        CoeffRule::Fontene(variant) => fontene_coeffs(ctx, r, s, variant),
    }
}

/// The recurrence evaluated over every site `(r, s)` with `r ≤ max_r`,
/// `s ≤ max_s` and `r + s ≤ max_sum`.
///
/// A singular site poisons exactly the sites that depend on it; every other
/// cell still carries its value.
#[derive(Clone, Debug)]
pub struct RecurrenceLattice {
    rule: CoeffRule,
    cells: Vec<Vec<Result<QuadraticSurd>>>,
}

impl RecurrenceLattice {
    pub fn fill(
        ctx: &mut SequenceContext,
        rule: CoeffRule,
        max_r: usize,
        max_s: usize,
        max_sum: usize,
    ) -> Result<Self> {
        rule.ensure_applies(ctx.kind())?;
        let one = QuadraticSurd::one(ctx.disc());
        let mut cells: Vec<Vec<Result<QuadraticSurd>>> = Vec::with_capacity(max_r + 1);
        for r in 0..=max_r {
            let width = max_s.min(max_sum.saturating_sub(r));
            let mut row = Vec::with_capacity(width + 1);
            for s in 0..=width {
                let cell = if r == 0 || s == 0 {
                    Ok(one.clone())
                } else {
                    let up = &cells[r - 1][s];
                    let left: &Result<QuadraticSurd> = &row[s - 1];
                    Self::step(ctx, rule, r, s, up, left)
                };
                row.push(cell);
            }
            cells.push(row);
        }
        Ok(RecurrenceLattice { rule, cells })
    }

    fn step(
        ctx: &mut SequenceContext,
        rule: CoeffRule,
        r: usize,
        s: usize,
        up: &Result<QuadraticSurd>,
        left: &Result<QuadraticSurd>,
    ) -> Result<QuadraticSurd> {
        let up = up.as_ref().map_err(Clone::clone)?;
        let left = left.as_ref().map_err(Clone::clone)?;
        let pair = coefficient_pair(ctx, rule, r, s)?;
        if !pair.satisfies_contract(ctx)? {
            return Err(Error::ContractViolation { r, s });
        }
        Ok(&(&pair.g1 * up) + &(&pair.g2 * left))
    }

    pub fn rule(&self) -> CoeffRule {
        self.rule
    }

    /// `C(r+s; r, s)` in the field.
    pub fn cell(&self, r: usize, s: usize) -> Option<&Result<QuadraticSurd>> {
        self.cells.get(r)?.get(s)
    }

    /// `C(n, k)` collapsed to a rational.
    pub fn binomial(&self, n: usize, k: usize) -> Result<Rational> {
        check_index(n, k)?;
        match self.cell(k, n - k) {
            Some(cell) => cell.as_ref().map_err(Clone::clone)?.as_rational(),
            None => Err(Error::IndexOutOfRange {
                index: n,
                len: self.cells.len(),
            }),
        }
    }
}

/// `C(n, k)` by the recurrence with the given coefficient family.
pub fn recurrence_binomial(
    ctx: &mut SequenceContext,
    rule: CoeffRule,
    n: usize,
    k: usize,
) -> Result<Rational> {
    check_index(n, k)?;
    RecurrenceLattice::fill(ctx, rule, k, n - k, n)?.binomial(n, k)
}

/// Rows `0..=n_max` of generalized binomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<LucasParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<[Rational; 2]>,
    #[serde(rename = "rule")]
    pub route: Route,
    pub rows: Vec<Vec<Rational>>,
}

impl Triangle {
    pub fn row(&self, n: usize) -> Option<&[Rational]> {
        self.rows.get(n).map(Vec::as_slice)
    }
}

pub fn build_triangle(ctx: &mut SequenceContext, route: Route, n_max: usize) -> Result<Triangle> {
    let rows = match route {
        Route::Factorial => (0..=n_max)
            .map(|n| (0..=n).map(|k| factorial_binomial(ctx, n, k)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?,
        Route::Recurrence(rule) => {
            let lattice = RecurrenceLattice::fill(ctx, rule, n_max, n_max, n_max)?;
            (0..=n_max)
                .map(|n| (0..=n).map(|k| lattice.binomial(n, k)).collect())
                .collect::<Result<Vec<Vec<_>>>>()?
        }
    };
    let initial = match ctx.kind() {
        SequenceKind::HoradamW { w0, w1 } => Some([w0.clone(), w1.clone()]),
        SequenceKind::HoradamH { h0, h1 } => Some([h0.clone(), h1.clone()]),
        _ => None,
    };
    Ok(Triangle {
        family: ctx.kind().tag().to_string(),
        params: ctx.params().cloned(),
        initial,
        route,
        rows,
    })
}
