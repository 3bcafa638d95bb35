use std::fmt;

use serde::Serialize;
use tesscensus::analysis::AnalysisError;
use tesscensus::census::CensusError;
use tesscensus::gfsystem::GfError;
use tesscensus::polyrat::PolyError;
use tesscensus::render::RenderError;
use tesscensus::tessmap::MapError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub exit: i32,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { kind: "usage", message: message.into(), exit: EXIT_USAGE }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { kind: "io", message: message.into(), exit: EXIT_USAGE }
    }

    /// The single stderr line.
    pub fn to_json_line(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            error: &'a str,
            message: &'a str,
            exit: i32,
        }
        serde_json::to_string(&Line { error: self.kind, message: &self.message, exit: self.exit })
            .expect("strings serialize")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        let exit = match e {
            MapError::Inconsistent { .. } => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        CliError { kind: "map", message: e.to_string(), exit }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Map(m) => m.into(),
            CensusError::HorizonStalled { .. } => {
                CliError { kind: "census", message: e.to_string(), exit: EXIT_INTERNAL }
            }
            _ => CliError { kind: "census", message: e.to_string(), exit: EXIT_USAGE },
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError { kind: "analysis", message: e.to_string(), exit: EXIT_USAGE }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError { kind: "polynomial", message: e.to_string(), exit: EXIT_USAGE }
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        CliError { kind: "gfsystem", message: e.to_string(), exit: EXIT_INTERNAL }
    }
}

impl From<RenderError> for CliError {
    fn from(e: RenderError) -> Self {
        let exit = match e {
            RenderError::Inconsistent { .. } => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        CliError { kind: "render", message: e.to_string(), exit }
    }
}
