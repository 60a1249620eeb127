//! Report containers and serialization plumbing shared by the CLI: the run
//! manifest, the combined analysis report, CSV writers, and the non-finite
//! guard (a NaN anywhere in a report is a hard error, never a silent pass).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::energy::NormReport;
use crate::error::{Error, Result};
use crate::flows::FlowTrajectory;
use crate::hopf::HopfReport;
use crate::variation::ResidualReport;

/// Every command records what it ran and every artifact it emitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub outputs: Vec<String>,
    pub parameters: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: String,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            input: None,
            outputs: Vec::new(),
            parameters: BTreeMap::new(),
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }
}

/// Combined per-function analysis output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub hopf: HopfReport,
    pub norms: NormReport,
    pub residuals: ResidualReport,
}

/// Serializes a report deterministically (struct field order is fixed and
/// serde_json prints shortest round-trip floats) after rejecting any
/// non-finite number. serde_json maps non-finite floats to `null`, and no
/// report schema contains a legitimate null, so both are caught here.
pub fn to_checked_json<T: Serialize>(value: &T, context: &str) -> Result<String> {
    let v = serde_json::to_value(value)?;
    check_finite(&v, context)?;
    let mut text = serde_json::to_string_pretty(&v)?;
    text.push('\n');
    Ok(text)
}

fn check_finite(v: &serde_json::Value, context: &str) -> Result<()> {
    match v {
        serde_json::Value::Null => Err(Error::NonFinite {
            context: context.to_string(),
        }),
        serde_json::Value::Number(n) => {
            if n.as_f64().map(f64::is_finite).unwrap_or(true) {
                Ok(())
            } else {
                Err(Error::NonFinite {
                    context: context.to_string(),
                })
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                check_finite(item, context)?;
            }
            Ok(())
        }
        serde_json::Value::Object(map) => {
            for (key, item) in map {
                check_finite(item, &format!("{context}.{key}"))?;
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

/// Trajectory CSV: iteration, energy, tangential_residual, stationarity_residual.
pub fn trajectory_csv(t: &FlowTrajectory) -> String {
    let mut out = String::from("iteration,energy,tangential_residual,stationarity_residual\n");
    for row in &t.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.iteration, row.energy, row.tangential_residual, row.stationarity_residual
        ));
    }
    out
}

/// Disc-grid CSV: r, theta, per-component extension values, Hopf value.
pub fn export_csv(
    rows: &[(f64, f64, Vec<num_complex::Complex64>, num_complex::Complex64)],
    dim: usize,
) -> String {
    let mut header = String::from("r,theta");
    for d in 0..dim {
        header.push_str(&format!(",ext_re_{d},ext_im_{d}"));
    }
    header.push_str(",hopf_re,hopf_im,hopf_abs\n");
    let mut out = header;
    for (r, theta, ext, hopf) in rows {
        out.push_str(&format!("{r},{theta}"));
        for v in ext {
            out.push_str(&format!(",{},{}", v.re, v.im));
        }
        out.push_str(&format!(",{},{},{}\n", hopf.re, hopf.im, hopf.norm()));
    }
    out
}

pub fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<String> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents)?;
    Ok(path.display().to_string())
}
