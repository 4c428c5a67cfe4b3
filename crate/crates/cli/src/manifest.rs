use std::path::Path;

use catwl::hin::MpnConfig;
use catwl::lift::{Functor, LiftConfig};
use catwl::wl::RefinementConfig;
use serde::Serialize;

/// Everything needed to replay a run. Embedded in JSON output and written
/// as a sidecar next to CSV and DOT files.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub argv: Vec<String>,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functor: Option<Functor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lift: Option<LiftConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refine: Option<RefinementConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mpn: Option<MpnConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(command: &'static str, inputs: &[&Path]) -> Self {
        Self {
            tool: "catwl",
            version: env!("CARGO_PKG_VERSION"),
            command,
            argv: std::env::args().skip(1).collect(),
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            functor: None,
            lift: None,
            refine: None,
            mpn: None,
            seed: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("manifest serialises");
        out.push('\n');
        out
    }
}
