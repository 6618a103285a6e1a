//! Client for an external hyperbolic-geometry worker.
//!
//! The worker is any command speaking JSON lines on stdin/stdout. Its first
//! line is a handshake `{"hello": "knotoidlab-bridge", "schema": 1, ...}`;
//! after that it answers each request line with one response line carrying
//! the same `id`. Links travel in the `X[a,b,c,d]` text form.

use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, ChildStdout, Command, Stdio};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pd::LinkPD;

pub const SCHEMA: u32 = 1;
pub const ENV_VAR: &str = "KNOTOIDLAB_BRIDGE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Volume,
    CuspShapes,
    Isometric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Filling {
    pub component: String,
    pub p: i64,
    pub q: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BridgeRequest {
    pub id: u64,
    pub task: Task,
    pub pd: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd2: Option<String>,
    #[serde(default)]
    pub fillings: Vec<Filling>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Nonhyperbolic,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspData {
    /// complex translation
    pub meridian: (f64, f64),
    pub longitude: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BridgeResponse {
    pub id: Option<u64>,
    pub status: Status,
    #[serde(default)]
    pub volume: Option<f64>,
    #[serde(default)]
    pub solution_type: Option<String>,
    #[serde(default)]
    pub cusp_data: Vec<CuspData>,
    #[serde(default)]
    pub isometric: Option<bool>,
    #[serde(default)]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hello {
    pub hello: String,
    pub schema: u32,
    #[serde(default)]
    pub engine: String,
}

/// Fillings read off the framed components of a link.
pub fn fillings_of(pd: &LinkPD) -> Vec<Filling> {
    pd.components.iter().filter_map(|c| c.framing.map(|(p, q)| Filling { component: c.label.clone(), p, q })).collect()
}

pub struct BridgeClient {
    child: Child,
    stdin: ChildStdin,
    stdout: BufReader<ChildStdout>,
    next_id: u64,
    pub hello: Hello,
}

impl BridgeClient {
    /// Starts `command` through the shell and checks the handshake.
    pub fn spawn(command: &str) -> Result<Self> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| Error::Bridge(format!("cannot start `{command}`: {e}")))?;
        let stdin = child.stdin.take().expect("piped");
        let mut stdout = BufReader::new(child.stdout.take().expect("piped"));
        let mut line = String::new();
        stdout.read_line(&mut line).map_err(|e| Error::Bridge(format!("no handshake: {e}")))?;
        let hello: Hello = serde_json::from_str(line.trim())
            .map_err(|e| Error::Bridge(format!("bad handshake `{}`: {e}", line.trim())))?;
        if hello.hello != "knotoidlab-bridge" || hello.schema != SCHEMA {
            let _ = child.kill();
            return Err(Error::Bridge(format!("unsupported worker {} schema {}", hello.hello, hello.schema)));
        }
        Ok(Self { child, stdin, stdout, next_id: 1, hello })
    }

    /// Engine identification from the handshake.
    pub fn version(&self) -> &str {
        &self.hello.engine
    }

    pub fn call(&mut self, task: Task, pd: &LinkPD, pd2: Option<&LinkPD>) -> Result<BridgeResponse> {
        let id = self.next_id;
        self.next_id += 1;
        let req = BridgeRequest {
            id,
            task,
            pd: pd.to_string(),
            pd2: pd2.map(|p| p.to_string()),
            fillings: fillings_of(pd),
            precision: None,
        };
        let text = serde_json::to_string(&req).map_err(|e| Error::Bridge(e.to_string()))?;
        writeln!(self.stdin, "{text}")
            .and_then(|_| self.stdin.flush())
            .map_err(|e| Error::Bridge(format!("worker gone: {e}")))?;
        let mut line = String::new();
        let n = self.stdout.read_line(&mut line).map_err(|e| Error::Bridge(e.to_string()))?;
        if n == 0 {
            return Err(Error::Bridge("worker closed its output".into()));
        }
        let resp: BridgeResponse = serde_json::from_str(line.trim())
            .map_err(|e| Error::Bridge(format!("bad response `{}`: {e}", line.trim())))?;
        if resp.id != Some(id) {
            return Err(Error::Bridge(format!("response id {:?} for request {id}", resp.id)));
        }
        Ok(resp)
    }

    /// `Some(volume)` for a hyperbolic complement, `None` otherwise.
    pub fn volume(&mut self, pd: &LinkPD) -> Result<Option<f64>> {
        let r = self.call(Task::Volume, pd, None)?;
        match r.status {
            Status::Ok => r.volume.map(Some).ok_or_else(|| Error::Bridge("ok response without volume".into())),
            Status::Nonhyperbolic => Ok(None),
            Status::Error => Err(Error::Bridge(r.message.unwrap_or_else(|| "worker error".into()))),
        }
    }

    pub fn cusp_shapes(&mut self, pd: &LinkPD) -> Result<Vec<CuspData>> {
        let r = self.call(Task::CuspShapes, pd, None)?;
        match r.status {
            Status::Ok => Ok(r.cusp_data),
            Status::Nonhyperbolic => Err(Error::Bridge("cusp shapes need a hyperbolic input".into())),
            Status::Error => Err(Error::Bridge(r.message.unwrap_or_default())),
        }
    }

    pub fn isometric(&mut self, a: &LinkPD, b: &LinkPD) -> Result<bool> {
        let r = self.call(Task::Isometric, a, Some(b))?;
        match (r.status, r.isometric) {
            (Status::Ok, Some(x)) => Ok(x),
            _ => Err(Error::Bridge(r.message.unwrap_or_else(|| "isometry check failed".into()))),
        }
    }
}

impl Drop for BridgeClient {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

/// Bridge command from an explicit flag, else from the environment.
pub fn resolve_command(flag: Option<&str>) -> Option<String> {
    flag.map(str::to_string).or_else(|| std::env::var(ENV_VAR).ok()).filter(|s| !s.trim().is_empty())
}

/// A table cell whose value may need the engine.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Cell {
    Volume(f64),
    NonHyperbolic,
    NeedsEngine,
    Failed(String),
}

impl Cell {
    pub fn volume(&self) -> Option<f64> {
        match self {
            Cell::Volume(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Cell::Volume(_) | Cell::NonHyperbolic)
    }

    /// Engine volume divided by `divisor`, or the reason there is none.
    pub fn from_engine(bridge: Option<&mut BridgeClient>, pd: &LinkPD, divisor: f64) -> Cell {
        match bridge {
            None => Cell::NeedsEngine,
            Some(b) => match b.volume(pd) {
                Ok(Some(v)) => Cell::Volume(v / divisor),
                Ok(None) => Cell::NonHyperbolic,
                Err(e) => Cell::Failed(e.to_string()),
            },
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Volume(v) => write!(f, "{v:.5}"),
            Cell::NonHyperbolic => f.write_str("Non-hyperbolic"),
            Cell::NeedsEngine => f.write_str("needs-engine"),
            Cell::Failed(m) => write!(f, "error: {m}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FAKE: &str = r#"printf '{"hello":"knotoidlab-bridge","schema":1,"engine":"fake"}\n'; while read -r line; do id=$(printf '%s' "$line" | sed 's/.*"id":\([0-9]*\).*/\1/'); case "$line" in *X*) printf '{"id":%s,"status":"ok","volume":5.5,"solution_type":"fake"}\n' "$id";; *) printf '{"id":%s,"status":"nonhyperbolic"}\n' "$id";; esac; done"#;

    fn unknot() -> LinkPD {
        LinkPD::from_curves(&crate::curves::CurveDiagram::new(vec![], vec![]).unwrap(), &[], &[]).unwrap()
    }

    #[test]
    fn request_round_trip() {
        let pd: LinkPD = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]; comp=k:1-6 frame=0/1".parse().unwrap();
        let req = BridgeRequest {
            id: 3,
            task: Task::Volume,
            pd: pd.to_string(),
            pd2: None,
            fillings: fillings_of(&pd),
            precision: None,
        };
        let text = serde_json::to_string(&req).unwrap();
        assert!(text.contains(r#""task":"volume""#));
        let back: BridgeRequest = serde_json::from_str(&text).unwrap();
        assert_eq!(back, req);
        assert_eq!(back.fillings, vec![Filling { component: "k".into(), p: 0, q: 1 }]);
    }

    #[test]
    fn fake_worker() {
        let mut b = BridgeClient::spawn(FAKE).unwrap();
        assert_eq!(b.version(), "fake");
        let pd: LinkPD = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]; comp=k:1-6".parse().unwrap();
        assert_eq!(b.volume(&pd).unwrap(), Some(5.5));
        assert_eq!(b.volume(&unknot()).unwrap(), None);
        assert_eq!(Cell::from_engine(Some(&mut b), &pd, 2.0), Cell::Volume(2.75));
    }

    #[test]
    fn bad_handshake_and_missing_worker() {
        assert!(BridgeClient::spawn("echo hi").is_err());
        assert!(BridgeClient::spawn(r#"echo '{"hello":"knotoidlab-bridge","schema":99}'"#).is_err());
        assert!(BridgeClient::spawn("true").is_err());
    }

    #[test]
    fn cells_without_engine() {
        let pd = unknot();
        let c = Cell::from_engine(None, &pd, 1.0);
        assert_eq!(c.to_string(), "needs-engine");
        assert!(!c.is_complete());
        assert_eq!(resolve_command(Some("x")), Some("x".into()));
        assert_eq!(resolve_command(Some(" ")), None);
    }
}
