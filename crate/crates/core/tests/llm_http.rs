//! Live-transport tests against a throwaway HTTP server on localhost.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::mpsc;
use std::thread;

use newsroom::llm::{ChatBackend, ChatClient, ChatMessage, EndpointConfig, LlmError, SamplingParams};

struct Captured {
    path: String,
    auth: Option<String>,
    body: serde_json::Value,
}

fn read_request(stream: &mut TcpStream) -> Captured {
    let mut reader = BufReader::new(stream.try_clone().unwrap());
    let mut line = String::new();
    reader.read_line(&mut line).unwrap();
    let path = line.split_whitespace().nth(1).unwrap_or_default().to_string();
    let mut len = 0usize;
    let mut auth = None;
    loop {
        let mut h = String::new();
        reader.read_line(&mut h).unwrap();
        let h = h.trim_end();
        if h.is_empty() {
            break;
        }
        let (name, value) = h.split_once(':').unwrap();
        match name.to_ascii_lowercase().as_str() {
            "content-length" => len = value.trim().parse().unwrap(),
            "authorization" => auth = Some(value.trim().to_string()),
            _ => {}
        }
    }
    let mut body = vec![0u8; len];
    reader.read_exact(&mut body).unwrap();
    Captured { path, auth, body: serde_json::from_slice(&body).unwrap() }
}

/// Serves `replies` in order, one connection each, and reports what it saw.
fn serve(replies: Vec<(u16, String)>) -> (String, mpsc::Receiver<Captured>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let base = format!("http://{}/v1", listener.local_addr().unwrap());
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        for (status, body) in replies {
            let (mut stream, _) = listener.accept().unwrap();
            let captured = read_request(&mut stream);
            let _ = tx.send(captured);
            let resp = format!(
                "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
            stream.write_all(resp.as_bytes()).unwrap();
        }
    });
    (base, rx)
}

fn messages() -> Vec<ChatMessage> {
    vec![ChatMessage::system("You are a journalist."), ChatMessage::user("Paper summary:\nText.")]
}

#[test]
fn recorded_completion_round_trip() {
    let reply = serde_json::json!({
        "id": "cmpl-1",
        "choices": [{"index": 0, "message": {"role": "assistant", "content": "## Article\nA short story."}}]
    });
    let (base, rx) = serve(vec![(200, reply.to_string())]);
    let client = ChatClient::new(EndpointConfig {
        base_url: base,
        api_key: Some("test-key".into()),
        timeout_secs: 5,
        ..Default::default()
    });
    let out = client.complete(&SamplingParams::default(), &messages()).unwrap();
    assert_eq!(out, "## Article\nA short story.");

    let seen = rx.recv().unwrap();
    assert_eq!(seen.path, "/v1/chat/completions");
    assert_eq!(seen.auth.as_deref(), Some("Bearer test-key"));
    assert_eq!(seen.body["top_p"], 0.4);
    assert_eq!(seen.body["frequency_penalty"], 1.0);
    assert_eq!(seen.body["max_tokens"], 4096);
    assert!(seen.body.get("temperature").is_none());
    assert!(seen.body.get("repetition_penalty").is_none());
    assert_eq!(seen.body["messages"][1]["role"], "user");
}

#[test]
fn auth_rejection_is_reported_without_retry() {
    let (base, rx) = serve(vec![(401, r#"{"error":"bad key"}"#.into())]);
    let client = ChatClient::new(EndpointConfig {
        base_url: base,
        timeout_secs: 5,
        max_retries: 3,
        retry_backoff_ms: 1,
        ..Default::default()
    });
    let err = client.complete(&SamplingParams::default(), &messages()).unwrap_err();
    assert_eq!(err, LlmError::Auth { status: 401 });
    assert!(rx.recv().unwrap().auth.is_none());
    assert!(rx.try_recv().is_err());
}

#[test]
fn server_error_then_success() {
    let ok = serde_json::json!({"choices": [{"message": {"content": "fine"}}]}).to_string();
    let (base, _rx) = serve(vec![(503, "busy".into()), (200, ok)]);
    let client = ChatClient::new(EndpointConfig {
        base_url: base,
        timeout_secs: 5,
        max_retries: 2,
        retry_backoff_ms: 1,
        ..Default::default()
    });
    assert_eq!(client.complete(&SamplingParams::default(), &messages()).unwrap(), "fine");
}

#[test]
fn unreachable_endpoint_exhausts_retries() {
    // bind then drop to get a port with nothing listening
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let client = ChatClient::new(EndpointConfig {
        base_url: format!("http://127.0.0.1:{port}/v1"),
        timeout_secs: 2,
        max_retries: 2,
        retry_backoff_ms: 1,
        ..Default::default()
    });
    match client.complete(&SamplingParams::default(), &messages()) {
        Err(LlmError::Transport { attempts, .. }) | Err(LlmError::Timeout { attempts }) => {
            assert_eq!(attempts, 3)
        }
        other => panic!("expected transport failure, got {other:?}"),
    }
}
