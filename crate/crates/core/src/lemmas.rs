//! Exact integer checks of the two counting lemmas used by the line-count
//! arguments.
//!
//! All arithmetic is in integers; `⌈2x/y⌉` is `(2x + y - 1) / y`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C(k, 2)`.
pub fn choose2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

fn positive(x: u64, y: u64) -> Result<()> {
    if x == 0 || y == 0 {
        Err(Error::NonPositive)
    } else {
        Ok(())
    }
}

/// `C(x,2) >= x - 1`, `xy >= x + y - 1`, and `xy >= x + y` when `x, y >= 2`.
pub fn lemma1_check(x: u64, y: u64) -> Result<bool> {
    positive(x, y)?;
    let choose = choose2(x) + 1 >= x;
    let product = x * y + 1 >= x + y;
    let strict = x < 2 || y < 2 || x * y >= x + y;
    Ok(choose && product && strict)
}

/// Evaluates `C(y,2) + C(⌈2x/y⌉,2) < x + y - 1`.
pub fn lemma2_holds(x: u64, y: u64) -> Result<bool> {
    positive(x, y)?;
    Ok(choose2(y) + choose2(ceil_div(2 * x, y)) + 1 < x + y)
}

/// Inclusive brute-force bounds for `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaDomain {
    pub x_max: u64,
    pub y_max: u64,
}

impl LemmaDomain {
    pub fn new(x_max: u64, y_max: u64) -> Result<Self> {
        positive(x_max, y_max)?;
        Ok(LemmaDomain { x_max, y_max })
    }

    pub fn square(bound: u64) -> Result<Self> {
        LemmaDomain::new(bound, bound)
    }

    fn points(self) -> impl Iterator<Item = (u64, u64)> {
        (1..=self.y_max).flat_map(move |y| (1..=self.x_max).map(move |x| (x, y)))
    }
}

/// Every `(x, y)` in the domain satisfying the strict inequality above.
pub fn lemma2_solution_set(dom: LemmaDomain) -> BTreeSet<(u64, u64)> {
    dom.points()
        .filter(|&(x, y)| lemma2_holds(x, y).expect("domain is positive"))
        .collect()
}

/// The exact solutions claimed for the inequality.
pub fn lemma2_expected() -> BTreeSet<(u64, u64)> {
    [(1, 2), (2, 2), (3, 3)].into_iter().collect()
}

/// `4x² − 2(y² + y)x + (y⁴ − 3y³ + 2y²)`.
pub fn trinomial(x: u64, y: u64) -> i128 {
    let (x, y) = (x as i128, y as i128);
    4 * x * x - 2 * (y * y + y) * x + (y.pow(4) - 3 * y.pow(3) + 2 * y * y)
}

/// `-3y² + 14y - 7`; the trinomial in `x` has real roots iff this is >= 0.
pub fn discriminant_factor(y: u64) -> i128 {
    let y = y as i128;
    -3 * y * y + 14 * y - 7
}

/// Checks that every solution with `y >= 2` makes the trinomial negative,
/// has `y <= 4`, and has a nonnegative discriminant factor.
pub fn trinomial_implication_check(dom: LemmaDomain) -> bool {
    dom.points()
        .filter(|&(x, y)| lemma2_holds(x, y).expect("domain is positive"))
        .all(|(x, y)| y <= 4 && (y < 2 || (trinomial(x, y) < 0 && discriminant_factor(y) >= 0)))
}

/// Summary of all three checks on a square domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub bound: u64,
    pub lemma1_ok: bool,
    pub lemma2_solutions: Vec<(u64, u64)>,
    pub lemma2_ok: bool,
    pub trinomial_ok: bool,
}

impl LemmaReport {
    pub fn all_ok(&self) -> bool {
        self.lemma1_ok && self.lemma2_ok && self.trinomial_ok
    }
}

pub fn verify_lemmas(bound: u64) -> Result<LemmaReport> {
    let dom = LemmaDomain::square(bound)?;
    let lemma1_ok = dom
        .points()
        .all(|(x, y)| lemma1_check(x, y).expect("domain is positive"));
    let solutions = lemma2_solution_set(dom);
    // The claimed set is only complete once the domain reaches (3, 3).
    let expected: BTreeSet<_> = lemma2_expected()
        .into_iter()
        .filter(|&(x, y)| x <= dom.x_max && y <= dom.y_max)
        .collect();
    Ok(LemmaReport {
        bound,
        lemma1_ok,
        lemma2_ok: solutions == expected,
        lemma2_solutions: solutions.into_iter().collect(),
        trinomial_ok: trinomial_implication_check(dom),
    })
}
