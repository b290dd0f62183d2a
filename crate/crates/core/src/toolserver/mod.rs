//! The two navigation tools and a line-delimited JSON-RPC 2.0 front end.

mod rpc;
mod tools;

pub use rpc::{INVALID_PARAMS, INVALID_REQUEST, METHOD_NOT_FOUND, PARSE_ERROR, PROTOCOL_VERSION};
pub use tools::{
    list_tools, CallError, ParamSpec, ParamType, ToolDescriptor, ToolResponse, ToolServer, CONTEXT_TOOL, SEARCH_TOOL,
};
