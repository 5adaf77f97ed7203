//! Textual equivalence-strategy names.

use ets_core::experts::Expert;
use ets_core::learn::EqStrategy;
use ets_core::suite::LengthDistribution;

use crate::error::{BenchError, Result};

/// Parses `baseline`, `moe`, `moe:<e>+<e>…`, `expert:<e>` or
/// `ets:<e>[:<k>]`. Bare `future` gets lookahead `k`, and `moe` mixes all
/// four experts.
pub fn parse_strategy(name: &str, k: usize, gamma: f64, mu: &LengthDistribution) -> Result<EqStrategy> {
    let expert = |e: &str| Expert::parse(e, k).map_err(BenchError::from);
    let name = name.trim();
    if name == "baseline" {
        return Ok(EqStrategy::baseline(mu.clone()));
    }
    if name == "moe" {
        return Ok(EqStrategy::moe_all(k, gamma, mu.clone()));
    }
    if let Some(list) = name.strip_prefix("moe:") {
        let experts = list.split('+').map(expert).collect::<Result<Vec<_>>>()?;
        return Ok(EqStrategy::MoE { experts, gamma, mu: mu.clone() });
    }
    if let Some(e) = name.strip_prefix("expert:") {
        return Ok(EqStrategy::Randomized { expert: expert(e)?, mu: mu.clone() });
    }
    if let Some(rest) = name.strip_prefix("ets:") {
        // `future:<l>` itself contains a colon, so the depth is the last field
        // only when it parses as a number and leaves a valid expert.
        if let Some((e, depth)) = rest.rsplit_once(':') {
            if let (Ok(depth), Ok(e)) = (depth.parse::<usize>(), expert(e)) {
                return Ok(EqStrategy::Deterministic { expert: e, k: depth });
            }
        }
        return Ok(EqStrategy::Deterministic { expert: expert(rest)?, k });
    }
    Err(BenchError::InvalidParameter(format!("unknown strategy `{name}`")))
}

/// Parses `default` or `point:<l>`.
pub fn parse_mu(name: &str) -> Result<LengthDistribution> {
    match name.trim() {
        "default" => Ok(ets_core::suite::mu_default()),
        other => other
            .strip_prefix("point:")
            .and_then(|l| l.parse().ok())
            .map(LengthDistribution::point)
            .ok_or_else(|| BenchError::InvalidParameter(format!("unknown length distribution `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ets_core::suite::mu_default;

    #[test]
    fn names() {
        let mu = mu_default();
        let p = |s| parse_strategy(s, 2, 0.2, &mu).unwrap();
        assert!(matches!(p("baseline"), EqStrategy::Randomized { expert: Expert::Trivial, .. }));
        assert!(matches!(p("moe"), EqStrategy::MoE { ref experts, .. } if experts.len() == 4));
        assert!(matches!(p("moe:trivial+active"), EqStrategy::MoE { ref experts, .. } if experts.len() == 2));
        assert!(matches!(p("expert:future"), EqStrategy::Randomized { expert: Expert::Future { lookahead: 2 }, .. }));
        assert!(matches!(p("ets:active:3"), EqStrategy::Deterministic { expert: Expert::ActiveInputs, k: 3 }));
        assert!(matches!(p("ets:future:4"), EqStrategy::Deterministic { expert: Expert::Future { lookahead: 2 }, k: 4 }));
        assert!(matches!(p("ets:future:4:1"), EqStrategy::Deterministic { expert: Expert::Future { lookahead: 4 }, k: 1 }));
        assert!(matches!(p("ets:trivial"), EqStrategy::Deterministic { expert: Expert::Trivial, k: 2 }));
        assert!(parse_strategy("oracle", 2, 0.2, &mu).is_err());
        assert!(parse_mu("point:0").is_ok() && parse_mu("uniform").is_err());
    }
}
