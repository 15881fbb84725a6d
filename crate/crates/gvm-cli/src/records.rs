//! Flat key-value record output: one record per line, space-separated
//! `key=value` tokens, first token naming the record type. Field order is
//! fixed so records can be diffed; `parse(print(x)) = x` for every type.

use gvm::{BayesFactorResult, Evidence, GvMParams, MLEFit};

use crate::CliError;

fn slug(e: Evidence) -> &'static str {
    match e {
        Evidence::Negative => "negative",
        Evidence::BareMention => "bare_mention",
        Evidence::Positive => "positive",
        Evidence::Substantial => "substantial",
        Evidence::Strong => "strong",
        Evidence::Decisive => "decisive",
    }
}

#[cfg(test)]
fn evidence_from_slug(s: &str) -> Result<Evidence, CliError> {
    s.replace('_', " ")
        .parse()
        .map_err(|_| CliError::Input(format!("unknown evidence category '{s}'")))
}

/// Split a record line into `(type, fields)`.
fn fields(line: &str) -> Result<(String, std::collections::HashMap<String, String>), CliError> {
    let mut map = std::collections::HashMap::new();
    let mut kind = None;
    for tok in line.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("malformed record token '{tok}'")))?;
        if k == "record" {
            kind = Some(v.to_string());
        } else {
            map.insert(k.to_string(), v.to_string());
        }
    }
    let kind = kind.ok_or_else(|| CliError::Input("record line missing 'record=' tag".into()))?;
    Ok((kind, map))
}

fn get<T: std::str::FromStr>(
    map: &std::collections::HashMap<String, String>,
    key: &str,
) -> Result<T, CliError> {
    map.get(key)
        .ok_or_else(|| CliError::Input(format!("record missing field '{key}'")))?
        .parse()
        .map_err(|_| CliError::Input(format!("record field '{key}' failed to parse")))
}

pub fn print_fit(fit: &MLEFit) -> String {
    let p = &fit.params;
    format!(
        "record=fit mu1={} mu2={} kappa1={} kappa2={} delta={} log_likelihood={} converged={} iterations={}",
        p.mu1(), p.mu2(), p.kappa1(), p.kappa2(), p.delta(),
        fit.log_likelihood, fit.converged, fit.iterations
    )
}

pub fn parse_fit(line: &str) -> Result<MLEFit, CliError> {
    let (kind, map) = fields(line)?;
    if kind != "fit" {
        return Err(CliError::Input(format!("expected a fit record, got '{kind}'")));
    }
    let params = GvMParams::new(
        get(&map, "mu1")?,
        get(&map, "mu2")?,
        get(&map, "kappa1")?,
        get(&map, "kappa2")?,
    )
    .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(MLEFit {
        params,
        log_likelihood: get(&map, "log_likelihood")?,
        converged: get(&map, "converged")?,
        iterations: get(&map, "iterations")?,
    })
}

pub fn print_bf(test: &str, bf: &BayesFactorResult) -> String {
    format!(
        "record=bayes_factor test={} b01={} log_b01={} mc_std_error={} s={} evidence={} numerator_loglik={} denominator_log_integral={}",
        test, bf.b01, bf.log_b01, bf.mc_std_error, bf.s_used, slug(bf.evidence),
        bf.numerator_loglik, bf.denominator_log_integral
    )
}

#[cfg(test)]
pub fn parse_bf(line: &str) -> Result<BayesFactorResult, CliError> {
    let (kind, map) = fields(line)?;
    if kind != "bayes_factor" {
        return Err(CliError::Input(format!("expected a bayes_factor record, got '{kind}'")));
    }
    Ok(BayesFactorResult {
        b01: get(&map, "b01")?,
        log_b01: get(&map, "log_b01")?,
        mc_std_error: get(&map, "mc_std_error")?,
        s_used: get(&map, "s")?,
        evidence: evidence_from_slug(map.get("evidence").map(String::as_str).unwrap_or(""))?,
        numerator_loglik: get(&map, "numerator_loglik")?,
        denominator_log_integral: get(&map, "denominator_log_integral")?,
    })
}

pub fn print_study(rep: &gvm::StudyReport) -> String {
    let seq = rep
        .per_sequence_means
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    format!(
        "record=study case={} mean={} ci_lo={} ci_hi={} evidence={} seq_means={} wall_time={}",
        rep.name, rep.aggregated_mean, rep.ci95.0, rep.ci95.1, slug(rep.evidence), seq, rep.wall_time
    )
}

#[cfg(test)]
pub fn parse_study(line: &str) -> Result<gvm::StudyReport, CliError> {
    let (kind, map) = fields(line)?;
    if kind != "study" {
        return Err(CliError::Input(format!("expected a study record, got '{kind}'")));
    }
    let name: gvm::study::CaseName = map
        .get("case")
        .ok_or_else(|| CliError::Input("record missing field 'case'".into()))?
        .parse()
        .map_err(|_| CliError::Input("record field 'case' failed to parse".into()))?;
    let per_sequence_means = map
        .get("seq_means")
        .ok_or_else(|| CliError::Input("record missing field 'seq_means'".into()))?
        .split(',')
        .map(|t| t.parse().map_err(|_| CliError::Input("bad seq_means entry".into())))
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(gvm::StudyReport {
        name,
        per_sequence_means,
        aggregated_mean: get(&map, "mean")?,
        ci95: (get(&map, "ci_lo")?, get(&map, "ci_hi")?),
        evidence: evidence_from_slug(map.get("evidence").map(String::as_str).unwrap_or(""))?,
        wall_time: get(&map, "wall_time")?,
        all_b01: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gvm::study::{builtin_case, run_case, CaseName};
    use gvm::{sample_gvm, seeded_rng, Sample};

    #[test]
    fn fit_record_round_trips() {
        let truth = GvMParams::new(4.095, 0.869, 0.304, 1.910).unwrap();
        let mut rng = seeded_rng(8);
        let draws: Vec<f64> = (0..500).map(|_| sample_gvm(&truth, &mut rng).unwrap()).collect();
        let fit = gvm::fit_mle(&Sample::new(draws).unwrap()).unwrap();
        let back = parse_fit(&print_fit(&fit)).unwrap();
        assert_eq!(back.params, fit.params);
        assert_eq!(back.log_likelihood, fit.log_likelihood);
        assert_eq!(back.converged, fit.converged);
        assert_eq!(back.iterations, fit.iterations);
    }

    #[test]
    fn bf_record_round_trips() {
        let bf = BayesFactorResult {
            b01: 2.5504,
            log_b01: 2.5504_f64.ln(),
            mc_std_error: 0.013,
            s_used: 100_000,
            evidence: Evidence::BareMention,
            numerator_loglik: -123.456,
            denominator_log_integral: -124.392,
        };
        assert_eq!(parse_bf(&print_bf("no-shift", &bf)).unwrap(), bf);
    }

    #[test]
    fn study_record_round_trips() {
        let mut spec = builtin_case(CaseName::K2);
        spec.r = 100;
        spec.sequences = 2;
        spec.s = 50;
        spec.n = 10;
        let rep = run_case(&spec).unwrap();
        assert_eq!(parse_study(&print_study(&rep)).unwrap(), rep);
    }

    #[test]
    fn malformed_records_rejected() {
        assert!(parse_fit("mu1=1").is_err());
        assert!(parse_fit("record=fit mu1=1").is_err());
        assert!(parse_bf("record=fit mu1=1").is_err());
    }
}
