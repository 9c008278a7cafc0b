//! Truncated one-variable formal power series over the rationals, the
//! compositional-inverse solver behind the Koszul functional equation
//! g(-s(-x)) = x, and the resulting consistency verdict.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// Formal series truncated at a fixed order. `coeffs[d]` is the coefficient
/// of x^d; operad generating functions always have coefficient 0 in degree 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    pub fn zero(order: u32) -> PowerSeries {
        PowerSeries {
            coeffs: vec![Rat::zero(); order as usize + 1],
        }
    }

    /// The identity series x, truncated at `order`.
    pub fn x(order: u32) -> PowerSeries {
        let mut s = PowerSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rat::one();
        }
        s
    }

    /// Coefficients listed from degree 0 upward.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> PowerSeries {
        assert!(!coeffs.is_empty(), "a series needs at least degree 0");
        PowerSeries { coeffs }
    }

    /// Series with coefficient `f(d)` in degree d.
    pub fn from_fn(order: u32, f: impl Fn(u32) -> Rat) -> PowerSeries {
        PowerSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, degree: u32) -> &Rat {
        &self.coeffs[degree as usize]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn truncate(&self, order: u32) -> PowerSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order as usize + 1);
        coeffs.resize(order as usize + 1, Rat::zero());
        PowerSeries { coeffs }
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        PowerSeries::from_fn(order, |d| {
            self.coeffs[d as usize].clone() + &other.coeffs[d as usize]
        })
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order()) as usize;
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        PowerSeries { coeffs }
    }

    /// Substitute -x for x.
    pub fn flip(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| if d % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }
}

/// Substitution f(g(x)), truncated at the smaller order. `g` must have a
/// zero constant term.
pub fn compose(f: &PowerSeries, g: &PowerSeries) -> Result<PowerSeries> {
    if !f.coeffs.is_empty() && !g.coeffs[0].is_zero() {
        return Err(Error::NonzeroConstantTerm(g.coeffs[0].to_string()));
    }
    let order = f.order().min(g.order());
    let g = g.truncate(order);
    // Horner evaluation: f0 + g*(f1 + g*(f2 + ...)).
    let mut acc = PowerSeries::zero(order);
    for d in (0..=order).rev() {
        acc = acc.mul(&g);
        let c = f.coeff(d);
        if !c.is_zero() {
            acc.coeffs[0] += c;
        }
    }
    Ok(acc)
}

/// The unique series s with a1 = 1 solving g(s(x)) = x through the given
/// order; this is the series tested by the Koszul functional equation once
/// the sign substitution x -> -x is applied on both sides. Computed by the
/// contracting fixed-point update s <- x - (g - x)(s), which gains one
/// correct degree per pass.
pub fn solve_koszul_inverse(g: &PowerSeries, order: u32) -> Result<PowerSeries> {
    if g.order() < 1 || !g.coeff(1).is_one() || !g.coeff(0).is_zero() {
        let shown = if g.order() >= 1 {
            g.coeff(1).to_string()
        } else {
            "nothing".to_string()
        };
        return Err(Error::BadLeadingCoefficient(shown));
    }
    let order = order.min(g.order());
    let mut tail = g.truncate(order);
    tail.coeffs[1] = Rat::zero();
    tail.coeffs[0] = Rat::zero();
    let x = PowerSeries::x(order);
    let mut s = x.clone();
    for _ in 0..order {
        s = x.sub(&compose(&tail, &s)?);
    }
    Ok(s)
}

/// Outcome of the Koszul consistency test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Inconsistent {
        degree: u32,
        solver_coeff: Rat,
        dual_coeff: Rat,
    },
}

/// Report of the functional-equation check g_P(-g_dual(-x)) = x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulReport {
    pub order: u32,
    pub solver_series: PowerSeries,
    pub verdict: Verdict,
}

impl KoszulReport {
    pub fn is_consistent(&self) -> bool {
        matches!(self.verdict, Verdict::Consistent)
    }
}

impl fmt::Display for KoszulReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Consistent => write!(
                f,
                "CONSISTENT through order {}: the candidate dual series solves the \
                 functional equation. This is a necessary condition only and does \
                 not certify Koszulity.",
                self.order
            ),
            Verdict::Inconsistent {
                degree,
                solver_coeff,
                dual_coeff,
            } => write!(
                f,
                "INCONSISTENT at degree {degree}: solver coefficient {solver_coeff}, \
                 dual-side coefficient {dual_coeff}. A necessary condition for \
                 Koszulity fails, so non-Koszulity is certified.",
            ),
        }
    }
}

/// Solve the functional equation for g_p and compare with the candidate dual
/// generating function. Both series must start with x. An inconsistency
/// certifies non-Koszulity; consistency certifies nothing.
pub fn koszul_verdict(g_p: &PowerSeries, g_dual: &PowerSeries, order: u32) -> Result<KoszulReport> {
    for g in [g_p, g_dual] {
        if g.order() < 1 || !g.coeff(1).is_one() || !g.coeff(0).is_zero() {
            let shown = if g.order() >= 1 {
                g.coeff(1).to_string()
            } else {
                "nothing".to_string()
            };
            return Err(Error::BadLeadingCoefficient(shown));
        }
    }
    let order = order.min(g_p.order()).min(g_dual.order());
    let solver = solve_koszul_inverse(g_p, order)?;
    // g_p(-g_dual(-x)) = x exactly when -g_dual(-x) matches the inverse.
    let candidate = g_dual.flip().neg();
    let mut verdict = Verdict::Consistent;
    for d in 1..=order {
        if solver.coeff(d) != candidate.coeff(d) {
            verdict = Verdict::Inconsistent {
                degree: d,
                solver_coeff: solver.coeff(d).clone(),
                dual_coeff: candidate.coeff(d).clone(),
            };
            break;
        }
    }
    Ok(KoszulReport {
        order,
        solver_series: solver,
        verdict,
    })
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        let one = Rat::one();
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if wrote {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            } else if negative {
                write!(f, "-")?;
            }
            if d == 0 {
                write!(f, "{abs}")?;
            } else if abs == one {
                write!(f, "x{}", power_suffix(d))?;
            } else {
                write!(f, "{abs}*x{}", power_suffix(d))?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.coeffs.len())
    }
}

fn power_suffix(d: usize) -> String {
    if d == 1 {
        String::new()
    } else {
        format!("^{d}")
    }
}

/// JSON form: coefficients from degree 1 upward, as exact-rational strings.
pub fn series_to_json(s: &PowerSeries) -> serde_json::Value {
    serde_json::json!({
        "order": s.order(),
        "coeffs": s.coeffs[1..].iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}
