//! Transport-independent request handling for the `/v1` HTTP API.

use std::sync::Arc;

use aerorisk_core::bn::NetworkDocument;
use aerorisk_core::safety::{validate_registry, HazardTaxonomy, RegistryDocument, RiskMatrix};
use aerorisk_core::scenario::Direction;
use aerorisk_core::{
    run_scenario, sensitivity_tornado, BayesianNetwork, Evidence, HazardRecord, InferenceError,
    Scenario,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::store::{ModelStore, StoreError};

/// Closed set of machine-readable error codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    MalformedBody,
    NotFound,
    MethodNotAllowed,
    NetworkInvalid,
    ValidationFailed,
    UnknownNode,
    UnknownState,
    ZeroEvidenceProbability,
    Internal,
}

impl ErrorCode {
    pub fn status(self) -> u16 {
        match self {
            ErrorCode::MalformedBody => 400,
            ErrorCode::NotFound => 404,
            ErrorCode::MethodNotAllowed => 405,
            ErrorCode::ZeroEvidenceProbability => 409,
            ErrorCode::NetworkInvalid
            | ErrorCode::ValidationFailed
            | ErrorCode::UnknownNode
            | ErrorCode::UnknownState => 422,
            ErrorCode::Internal => 500,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    pub code: ErrorCode,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl ApiError {
    fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        ApiError {
            code,
            message: message.into(),
            details: None,
        }
    }

    fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    fn into_response(self) -> Response {
        Response {
            status: self.code.status(),
            body: json!({ "error": self }),
        }
    }
}

impl From<InferenceError> for ApiError {
    fn from(e: InferenceError) -> Self {
        let message = e.to_string();
        match e {
            InferenceError::UnknownNode(node) => {
                ApiError::new(ErrorCode::UnknownNode, message).with_details(json!({ "node": node }))
            }
            InferenceError::UnknownState { node, state } => {
                ApiError::new(ErrorCode::UnknownState, message)
                    .with_details(json!({ "node": node, "state": state }))
            }
            InferenceError::ZeroEvidenceProbability => {
                ApiError::new(ErrorCode::ZeroEvidenceProbability, message)
            }
            InferenceError::StateSpaceTooLarge(_)
            | InferenceError::TargetIsSensitivityNode(_)
            | InferenceError::SensitivityNodeObserved(_) => {
                ApiError::new(ErrorCode::ValidationFailed, message)
            }
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        ApiError::new(ErrorCode::Internal, e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Response {
    pub status: u16,
    pub body: Value,
}

impl Response {
    fn ok(status: u16, body: impl Serialize) -> Self {
        Response {
            status,
            body: serde_json::to_value(body).expect("response serialization is infallible"),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryRequest {
    pub target: String,
    #[serde(default)]
    pub evidence: Evidence,
    #[serde(default)]
    pub direction: Direction,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TornadoRequest {
    pub target: String,
    pub state: String,
    /// Defaults to every unobserved ancestor of the target.
    #[serde(default)]
    pub nodes: Option<Vec<String>>,
    #[serde(default)]
    pub evidence: Evidence,
}

#[derive(Debug)]
pub struct Service {
    store: ModelStore,
    registry: Vec<HazardRecord>,
}

impl Service {
    pub fn new(store: ModelStore, registry: Vec<HazardRecord>) -> Self {
        Service { store, registry }
    }

    pub fn store(&self) -> &ModelStore {
        &self.store
    }

    pub fn handle_request(&self, method: &str, path: &str, body: &[u8]) -> Response {
        let path = path
            .split('?')
            .next()
            .unwrap_or_default()
            .trim_end_matches('/');
        let segments: Vec<&str> = path.split('/').skip(1).collect();
        let result = match (method, segments.as_slice()) {
            ("POST", ["v1", "models"]) => self.create_model(body),
            ("GET", ["v1", "models", id]) => self.get_model(id),
            ("POST", ["v1", "models", id, "query"]) => self.query(id, body),
            ("POST", ["v1", "models", id, "tornado"]) => self.tornado(id, body),
            ("GET", ["v1", "registry"]) => {
                Ok(Response::ok(200, json!({ "hazards": self.registry })))
            }
            ("POST", ["v1", "registry", "validate"]) => validate(body),
            (_, ["v1", "models"])
            | (_, ["v1", "models", _])
            | (_, ["v1", "models", _, "query" | "tornado"])
            | (_, ["v1", "registry"])
            | (_, ["v1", "registry", "validate"]) => Err(ApiError::new(
                ErrorCode::MethodNotAllowed,
                format!("{method} is not allowed on {path}"),
            )),
            _ => Err(ApiError::new(
                ErrorCode::NotFound,
                format!("no route for {path}"),
            )),
        };
        result.unwrap_or_else(ApiError::into_response)
    }

    fn create_model(&self, body: &[u8]) -> Result<Response, ApiError> {
        let doc: NetworkDocument = parse(body)?;
        let net = BayesianNetwork::from_document(doc)
            .map_err(|e| ApiError::new(ErrorCode::NetworkInvalid, e.to_string()))?;
        let (id, created) = self.store.put(&net)?;
        Ok(Response::ok(
            if created { 201 } else { 200 },
            json!({ "id": id, "nodes": net.len() }),
        ))
    }

    fn load(&self, id: &str) -> Result<Arc<BayesianNetwork>, ApiError> {
        self.store
            .get(id)?
            .ok_or_else(|| ApiError::new(ErrorCode::NotFound, format!("unknown model {id:?}")))
    }

    fn get_model(&self, id: &str) -> Result<Response, ApiError> {
        let net = self.load(id)?;
        Ok(Response::ok(
            200,
            json!({ "id": id, "network": net.to_document() }),
        ))
    }

    fn query(&self, id: &str, body: &[u8]) -> Result<Response, ApiError> {
        let net = self.load(id)?;
        let req: QueryRequest = parse(body)?;
        let sc = Scenario::new("query", req.target, req.direction, req.evidence);
        let result = run_scenario(&net, &sc)?;
        Ok(Response::ok(200, result))
    }

    fn tornado(&self, id: &str, body: &[u8]) -> Result<Response, ApiError> {
        let net = self.load(id)?;
        let req: TornadoRequest = parse(body)?;
        let nodes = match req.nodes {
            Some(n) => n,
            None => default_sensitivity_nodes(&net, &req.target, &req.evidence)?,
        };
        let refs: Vec<&str> = nodes.iter().map(String::as_str).collect();
        let report = sensitivity_tornado(&net, &req.target, &req.state, &refs, &req.evidence)?;
        Ok(Response::ok(200, report))
    }
}

/// Unobserved ancestors of `target`, in network order.
pub fn default_sensitivity_nodes(
    net: &BayesianNetwork,
    target: &str,
    evidence: &Evidence,
) -> Result<Vec<String>, InferenceError> {
    let t = net
        .node_index(target)
        .ok_or_else(|| InferenceError::UnknownNode(target.to_string()))?;
    Ok((0..net.len())
        .filter(|&i| net.is_ancestor(i, t) && !evidence.contains(&net.node(i).name))
        .map(|i| net.node(i).name.clone())
        .collect())
}

fn validate(body: &[u8]) -> Result<Response, ApiError> {
    let doc: RegistryDocument = parse(body)?;
    let violations = validate_registry(
        &doc.hazards,
        &RiskMatrix::default(),
        &HazardTaxonomy::drone(),
    );
    if violations.is_empty() {
        Ok(Response::ok(
            200,
            json!({ "valid": true, "records": doc.hazards.len() }),
        ))
    } else {
        Err(ApiError::new(
            ErrorCode::ValidationFailed,
            format!(
                "{} violation(s) in {} record(s)",
                violations.len(),
                doc.hazards.len()
            ),
        )
        .with_details(json!({ "violations": violations })))
    }
}

fn parse<T: for<'de> Deserialize<'de>>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::new(ErrorCode::MalformedBody, e.to_string()))
}
