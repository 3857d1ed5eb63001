//! JSON form of suite reports. Every integer is written as a decimal string;
//! absent values are `null`.

use serde::Serialize;

use crate::pipeline::{PrimeRecord, SuiteReport};
use crate::syntax::render_poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRecordJson {
    pub prime: String,
    pub relations_ok: bool,
    /// Components `x1 -> …`, `x2 -> …` in order.
    pub center_map: Option<Vec<String>>,
    pub jacobian: Option<String>,
    pub bracket_preserved: Option<bool>,
    pub degree_weyl: Option<String>,
    pub degree_center: Option<String>,
    pub inverse_center_degree: Option<String>,
    pub inverse_weyl_degree: Option<String>,
    pub hypothesis_flags: Vec<String>,
    pub elapsed_ms: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalJson {
    pub inverse_weyl_degree: Option<String>,
    pub elapsed_ms: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReportJson {
    pub endo: String,
    pub n: String,
    pub degree: Option<String>,
    pub primes: Vec<String>,
    pub excluded_primes: Vec<String>,
    pub passed: bool,
    pub records: Vec<PrimeRecordJson>,
    pub rational: RationalJson,
}

fn num(v: impl ToString) -> String {
    v.to_string()
}

impl From<&PrimeRecord> for PrimeRecordJson {
    fn from(r: &PrimeRecord) -> Self {
        PrimeRecordJson {
            prime: num(r.prime),
            relations_ok: r.relations_ok,
            center_map: r
                .center_map
                .as_ref()
                .map(|m| m.components().iter().map(render_poly).collect()),
            jacobian: r.jacobian.as_ref().map(render_poly),
            bracket_preserved: r.bracket_preserved,
            degree_weyl: r.degree_weyl.map(num),
            degree_center: r.degree_center.map(num),
            inverse_center_degree: r.inverse_center_degree.map(num),
            inverse_weyl_degree: r.inverse_weyl_degree.map(num),
            hypothesis_flags: r.hypothesis_flags.clone(),
            elapsed_ms: num(r.elapsed.as_millis()),
            error: r.error.clone(),
        }
    }
}

impl From<&SuiteReport> for SuiteReportJson {
    fn from(r: &SuiteReport) -> Self {
        SuiteReportJson {
            endo: r.name.clone(),
            n: num(r.n),
            degree: r.degree.map(num),
            primes: r.primes.iter().map(num).collect(),
            excluded_primes: r.excluded_primes.iter().map(num).collect(),
            passed: r.passed(),
            records: r.records.iter().map(PrimeRecordJson::from).collect(),
            rational: RationalJson {
                inverse_weyl_degree: r.rational.inverse_weyl_degree.map(num),
                elapsed_ms: num(r.rational.elapsed.as_millis()),
                error: r.rational.error.clone(),
            },
        }
    }
}

/// Pretty-printed JSON document for a suite report.
pub fn render_suite_report(r: &SuiteReport) -> String {
    serde_json::to_string_pretty(&SuiteReportJson::from(r)).expect("report is serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Prime;
    use crate::pipeline::run_suite;
    use crate::syntax::EndoFile;

    #[test]
    fn field_names_and_string_integers() {
        let f = EndoFile::parse("n = 1\nring = Z\ny1 -> y1 + y2^2\ny2 -> y2\n")
            .unwrap()
            .to_endo()
            .unwrap();
        let r = run_suite(&f, &[Prime::new(3).unwrap()], None, "shear").unwrap();
        let v: serde_json::Value = serde_json::from_str(&render_suite_report(&r)).unwrap();
        let rec = &v["records"][0];
        for key in [
            "prime",
            "relations_ok",
            "center_map",
            "jacobian",
            "bracket_preserved",
            "degree_weyl",
            "degree_center",
            "inverse_center_degree",
            "inverse_weyl_degree",
            "hypothesis_flags",
            "elapsed_ms",
        ] {
            assert!(rec.get(key).is_some(), "missing {key}");
        }
        assert_eq!(rec["prime"], "3");
        assert_eq!(rec["center_map"][0], "x1 + x2^2 + 2");
        assert_eq!(rec["jacobian"], "1");
        assert_eq!(rec["degree_center"], "2");
        assert!(rec["elapsed_ms"].is_string());
        assert!(rec.get("error").is_none());
        assert_eq!(v["passed"], true);
        assert_eq!(v["rational"]["inverse_weyl_degree"], "2");
    }
}
