use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `⌊a / b⌋` for `b > 0`.
pub fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// `⌈a / b⌉` for `b > 0`.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// `⌊(1 - 1/(R_χ - 1)) n⌋`, the largest minimum degree a blow-up of a
/// `(R_χ - 1)`-partite graph can have.
pub fn trivial_degree_threshold(chromatic_ramsey: usize, n: usize) -> usize {
    assert!(chromatic_ramsey >= 3, "chromatic Ramsey number must be at least 3");
    let k = chromatic_ramsey - 1;
    (k - 1) * n / k
}

/// Which term attains `min{5δ-4n, (4δ-3n)/2, (2δ-n)/3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremalPiece {
    /// `5δ - 4n`, for `δ <= 5n/6`.
    FiveDeltaMinusFourN,
    /// `(4δ - 3n)/2`, for `5n/6 <= δ <= 7n/8`.
    FourDeltaMinusThreeNHalf,
    /// `(2δ - n)/3`, for `δ >= 7n/8`.
    TwoDeltaMinusNThird,
}

/// The mixed-colour lower bound in force at `(n, δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoonPiece {
    /// `⌊(2δ-n)/3⌋` for `δ >= 7n/8`.
    Large,
    /// `⌊(4δ-3n)/2⌋ - o(n)` for `5n/6 < δ < 7n/8`.
    Medium,
    /// `5δ-4n` for `4n/5 <= δ <= 5n/6`.
    Small,
}

/// The single-colour lower bound in force at `(n, δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BesPiece {
    /// `⌊(δ+1)/5⌋` for `δ >= 65n/66`.
    Large,
    /// `⌈(5δ-4n)/2⌉` for `4n/5 <= δ <= 5n/6`.
    Small,
    /// Open-question formulas: `⌊(δ+1)/5⌋` for `δ >= 15n/17`.
    QuestionHigh,
    /// `⌊(4δ-3n+1)/3⌋` for `6n/7 <= δ <= 15n/17`.
    QuestionMiddle,
    /// `⌈(5δ-4n)/2⌉` for `4n/5 <= δ <= 6n/7`.
    QuestionLow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Proven,
    /// True up to an `o(n)` error term.
    Asymptotic,
    /// Conjectured for `n >= 25`, not proven.
    Conjectured,
    /// No bound is stated here.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub delta: usize,
    /// `min{5δ-4n, (4δ-3n)/2, (2δ-n)/3}` as an exact rational.
    pub extremal_min_exact: Rational64,
    /// `⌊extremal_min_exact⌋`: no tiling in the matching construction beats it.
    pub extremal_min: i64,
    pub applicable_piece: ExtremalPiece,
    pub moon_bound: i64,
    pub moon_piece: MoonPiece,
    pub moon_status: BoundStatus,
    pub bes_bound: Option<i64>,
    pub bes_piece: Option<BesPiece>,
    pub bes_status: BoundStatus,
    /// Open-question formula values, present when `n >= 25` and `δ` lies in
    /// the formula's closed range.
    pub c1: Option<i64>,
    pub c2: Option<i64>,
    pub c3: Option<i64>,
}

impl BoundReport {
    /// The largest question formula value applicable at this `(n, δ)`.
    pub fn question_value(&self) -> Option<i64> {
        [self.c1, self.c2, self.c3].into_iter().flatten().max()
    }
}

pub fn bound_report(n: usize, delta: usize) -> Result<BoundReport> {
    if 5 * delta < 4 * n || delta >= n {
        return Err(Error::Inadmissible(format!(
            "bounds need 4n/5 <= delta <= n-1, got n={n}, delta={delta}"
        )));
    }
    let (ni, d) = (n as i64, delta as i64);
    let small = Rational64::from_integer(5 * d - 4 * ni);
    let medium = Rational64::new(4 * d - 3 * ni, 2);
    let large = Rational64::new(2 * d - ni, 3);
    let extremal = small.min(medium).min(large);
    let applicable_piece = if 8 * d >= 7 * ni {
        ExtremalPiece::TwoDeltaMinusNThird
    } else if 6 * d >= 5 * ni {
        ExtremalPiece::FourDeltaMinusThreeNHalf
    } else {
        ExtremalPiece::FiveDeltaMinusFourN
    };

    let (moon_bound, moon_piece, moon_status) = if 8 * d >= 7 * ni {
        (floor_div(2 * d - ni, 3), MoonPiece::Large, BoundStatus::Proven)
    } else if 6 * d <= 5 * ni {
        (5 * d - 4 * ni, MoonPiece::Small, BoundStatus::Proven)
    } else {
        (floor_div(4 * d - 3 * ni, 2), MoonPiece::Medium, BoundStatus::Asymptotic)
    };

    let high = floor_div(d + 1, 5);
    let middle = floor_div(4 * d - 3 * ni + 1, 3);
    let low = ceil_div(5 * d - 4 * ni, 2);
    let question = n >= 25;
    let c1 = (question && 17 * d >= 15 * ni).then_some(high);
    let c2 = (question && 7 * d >= 6 * ni && 17 * d <= 15 * ni).then_some(middle);
    let c3 = (question && 7 * d <= 6 * ni).then_some(low);

    let (bes_bound, bes_piece, bes_status) = if 66 * d >= 65 * ni {
        (Some(high), Some(BesPiece::Large), BoundStatus::Proven)
    } else if 6 * d <= 5 * ni {
        (Some(low), Some(BesPiece::Small), BoundStatus::Proven)
    } else if question {
        let piece = if c1.is_some() && c1 >= c2 {
            BesPiece::QuestionHigh
        } else if c2.is_some() && c2 >= c3 {
            BesPiece::QuestionMiddle
        } else {
            BesPiece::QuestionLow
        };
        let value = [c1, c2, c3].into_iter().flatten().max();
        (value, Some(piece), BoundStatus::Conjectured)
    } else {
        (None, None, BoundStatus::Unknown)
    };

    Ok(BoundReport {
        n,
        delta,
        extremal_min_exact: extremal,
        extremal_min: extremal.floor().to_integer(),
        applicable_piece,
        moon_bound,
        moon_piece,
        moon_status,
        bes_bound,
        bes_piece,
        bes_status,
        c1,
        c2,
        c3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_helpers() {
        assert_eq!(floor_div(7, 2), 3);
        assert_eq!(floor_div(-1, 3), -1);
        assert_eq!(ceil_div(5, 2), 3);
        assert_eq!(ceil_div(4, 2), 2);
        assert_eq!(ceil_div(-1, 2), 0);
    }

    #[test]
    fn trivial_threshold() {
        assert_eq!(trivial_degree_threshold(6, 10), 8);
        assert_eq!(trivial_degree_threshold(6, 11), 8);
        assert_eq!(trivial_degree_threshold(3, 10), 5);
    }

    #[test]
    fn piece_boundaries_agree() {
        let r = bound_report(36, 30).unwrap();
        assert_eq!(r.extremal_min_exact, Rational64::from_integer(6));
        assert_eq!(Rational64::new(4 * 30 - 3 * 36, 2), Rational64::from_integer(6));
        assert_eq!(r.moon_bound, 6);
        assert_eq!(r.moon_piece, MoonPiece::Small);

        let r = bound_report(40, 35).unwrap();
        assert_eq!(r.extremal_min_exact, Rational64::from_integer(10));
        assert_eq!(r.applicable_piece, ExtremalPiece::TwoDeltaMinusNThird);
        assert_eq!(r.moon_bound, 10);
    }

    #[test]
    fn continuity_over_grid() {
        for n in 5..200usize {
            for delta in (4 * n).div_ceil(5)..n {
                let r = bound_report(n, delta).unwrap();
                let (ni, d) = (n as i64, delta as i64);
                let want = match r.applicable_piece {
                    ExtremalPiece::FiveDeltaMinusFourN => Rational64::from_integer(5 * d - 4 * ni),
                    ExtremalPiece::FourDeltaMinusThreeNHalf => Rational64::new(4 * d - 3 * ni, 2),
                    ExtremalPiece::TwoDeltaMinusNThird => Rational64::new(2 * d - ni, 3),
                };
                assert_eq!(r.extremal_min_exact, want, "n={n} delta={delta}");
            }
        }
    }

    #[test]
    fn bes_values() {
        let r = bound_report(66, 65).unwrap();
        assert_eq!(r.bes_bound, Some(13));
        assert_eq!(r.bes_status, BoundStatus::Proven);
        let r = bound_report(25, 22).unwrap();
        assert_eq!(r.c2, Some(4));
        assert_eq!(r.bes_status, BoundStatus::Conjectured);
        let r = bound_report(24, 20).unwrap();
        assert_eq!(r.bes_bound, Some(2));
        assert_eq!(r.c3, None);
        let r = bound_report(24, 21).unwrap();
        assert_eq!(r.bes_bound, None);
        assert_eq!(r.bes_status, BoundStatus::Unknown);
        assert!(bound_report(10, 7).is_err());
        assert!(bound_report(10, 10).is_err());
    }
}
