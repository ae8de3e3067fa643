//! Counting alternative multiplet patterns.
//!
//! All arithmetic is exact: counts are integers and probabilities are
//! rationals, rendered to decimal only at the edge.

use num_integer::binomial;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::Error;

/// Number of choices made at each stage of the derivation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StageCounts {
    pub quartet_choices: u64,
    pub sextet2_choices: u64,
    pub sextet3_choices: u64,
}

/// The published stage counts. The two sextet counts come without a
/// derivation and are kept as given.
pub const PUBLISHED_COUNTS: StageCounts =
    StageCounts { quartet_choices: 12870, sextet2_choices: 420, sextet3_choices: 24 };

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountModel {
    Published,
    /// Every stage picks freely among (quartet, doublet) pairings available
    /// after the previous stage.
    Pairings,
}

/// Ways to pick which 8 of the 16 first-two-nucleotide prefixes form quartets.
pub fn count_quartet_choices() -> u64 {
    binomial(16u64, 8)
}

/// Ways to form `sextets` sextets from distinct quartets and distinct
/// doublets.
pub fn pairing_choices(quartets: u64, doublets: u64, sextets: u64) -> u64 {
    let mut falling = 1u64;
    for i in 0..sextets {
        falling *= doublets.saturating_sub(i);
    }
    binomial(quartets, sextets) * falling
}

/// Counts under the pairing model: two sextets chosen after level 2
/// (8 quartets, 16 doublets), then one more after level 3 (6 quartets,
/// 14 doublets).
pub fn pairing_counts() -> StageCounts {
    StageCounts {
        quartet_choices: count_quartet_choices(),
        sextet2_choices: pairing_choices(8, 16, 2),
        sextet3_choices: pairing_choices(6, 14, 1),
    }
}

pub fn counts_for(model: CountModel) -> StageCounts {
    match model {
        CountModel::Published => PUBLISHED_COUNTS,
        CountModel::Pairings => pairing_counts(),
    }
}

pub fn pattern_probability(counts: StageCounts) -> Result<Ratio<u64>, Error> {
    let StageCounts { quartet_choices: a, sextet2_choices: b, sextet3_choices: c } = counts;
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::ZeroCount);
    }
    let denominator = a
        .checked_mul(b)
        .and_then(|x| x.checked_mul(c))
        .ok_or_else(|| Error::Parse("count product overflows".to_string()))?;
    Ok(Ratio::new(1, denominator))
}

/// Renders a positive rational as `d.ddde-N` with `digits` significant
/// figures, rounding half up.
pub fn to_scientific(value: Ratio<u64>, digits: u32) -> String {
    assert!(digits >= 1, "at least one significant digit");
    let (num, den) = (u128::from(*value.numer()), u128::from(*value.denom()));
    if num == 0 {
        return "0".to_string();
    }
    // Find e with 10^e <= num/den < 10^(e+1).
    let mut exponent: i32 = 0;
    let (mut n, mut d) = (num, den);
    while n >= d * 10 {
        d *= 10;
        exponent += 1;
    }
    while n < d {
        n *= 10;
        exponent -= 1;
    }
    // n/d is now in [1, 10); take digits - 1 further decimals.
    let scale = 10u128.pow(digits - 1);
    let scaled = n * scale;
    let mut mantissa = scaled / d;
    if (scaled % d) * 2 >= d {
        mantissa += 1;
    }
    if mantissa >= 10 * scale {
        mantissa /= 10;
        exponent += 1;
    }
    let text = mantissa.to_string();
    let (head, tail) = text.split_at(1);
    if tail.is_empty() {
        format!("{head}e{exponent}")
    } else {
        format!("{head}.{tail}e{exponent}")
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CountReport {
    pub model: CountModel,
    pub counts: StageCounts,
    pub probability: String,
    pub probability_decimal: String,
    /// Whether the counts equal the published ones.
    pub agrees_with_published: bool,
}

pub fn count_report(model: CountModel) -> CountReport {
    let counts = counts_for(model);
    let p = pattern_probability(counts).expect("positive counts");
    CountReport {
        model,
        counts,
        probability: format!("{}/{}", p.numer(), p.denom()),
        probability_decimal: to_scientific(p, 4),
        agrees_with_published: counts == PUBLISHED_COUNTS,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subsets_of_size(n: u32, k: u32) -> u64 {
        (0u32..1 << n).filter(|m| m.count_ones() == k).count() as u64
    }

    #[test]
    fn quartet_choices() {
        assert_eq!(count_quartet_choices(), 12870);
        assert_eq!(binomial(16u64, 0), 1);
    }

    #[test]
    fn binomial_matches_brute_force() {
        for n in 0..=16u32 {
            for k in 0..=n {
                assert_eq!(binomial(u64::from(n), u64::from(k)), subsets_of_size(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn probabilities() {
        let p = pattern_probability(PUBLISHED_COUNTS).unwrap();
        assert_eq!(p, Ratio::new(1, 129_729_600));
        assert_eq!(to_scientific(p, 2), "7.7e-9");
        assert_eq!(to_scientific(p, 4), "7.708e-9");
        let one = StageCounts { quartet_choices: 1, sextet2_choices: 1, sextet3_choices: 1 };
        assert_eq!(pattern_probability(one).unwrap(), Ratio::from_integer(1));
        let single = StageCounts { quartet_choices: 12870, ..one };
        assert_eq!(pattern_probability(single).unwrap(), Ratio::new(1, 12870));
        let zero = StageCounts { sextet3_choices: 0, ..one };
        assert!(matches!(pattern_probability(zero), Err(Error::ZeroCount)));
    }

    #[test]
    fn scientific_rendering() {
        assert_eq!(to_scientific(Ratio::new(1, 1), 2), "1.0e0");
        assert_eq!(to_scientific(Ratio::new(999, 1000), 2), "1.0e0");
        assert_eq!(to_scientific(Ratio::new(1, 8), 1), "1e-1");
        assert_eq!(to_scientific(Ratio::new(250, 1), 3), "2.50e2");
    }

    #[test]
    fn pairing_model_disagrees_with_published_counts() {
        let counts = pairing_counts();
        assert_eq!(counts.sextet2_choices, 6720);
        assert_eq!(counts.sextet3_choices, 84);
        assert!(!count_report(CountModel::Pairings).agrees_with_published);
        assert!(count_report(CountModel::Published).agrees_with_published);
    }
}
