use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use schubert_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["schubert"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("schubert-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_file(&p);
    p
}

#[test]
fn classify_b3_exceptional() {
    let (code, out, _) = call(&["classify", "--type", "B", "--rank", "3", "--lambda", "3,0,-1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["labels"], serde_json::json!(["ExceptionalB3"]));
    assert_eq!(v["dim"], 9);
    assert_eq!(v["poincare"], serde_json::json!([1, 1, 1, 2, 2, 2, 2, 1, 1, 1]));
    assert_eq!(v["palindromic"], true);
    assert_eq!(v["smooth"], false);
}

#[test]
fn classify_csv_columns() {
    let (code, out, _) = call(&["classify", "-t", "A", "-r", "2", "-l", "-1,2", "-f", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("lambda,lengthS,palindromic,labels,dim"));
    assert_eq!(lines.next(), Some("\"-1,2\",2,true,CPO;Chain;Spiral,2"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(call(&[]).0, 1);
    assert_eq!(call(&["classify", "--type", "A", "--rank", "2"]).0, 1);
    assert_eq!(call(&["enumerate", "--type", "A", "--rank", "2", "--max-len", "-1"]).0, 1);
    assert_eq!(call(&["classify", "--type", "A", "--rank", "2", "--lambda", "1,0"]).0, 1);
    assert_eq!(call(&["classify", "--type", "Q", "--rank", "2", "--lambda", "0,0"]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
}

#[test]
fn verify_g2_passes() {
    let (code, out, err) = call(&["verify", "--type", "G", "--rank", "2", "--max-len", "10"]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(!out.contains("MISMATCH"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_schubert");
    let ok = Command::new(bin).args(["series", "-t", "E", "-r", "8"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["classify", "-t", "A", "-r", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["enumerate", "-t", "B", "-r", "3", "-m", "6", "-f", "csv"][..],
        &["hasse", "-t", "A", "-r", "2", "-m", "6"][..],
        &["verify", "-t", "C", "-r", "2", "-m", "8", "-f", "json"][..],
        &["chains", "-t", "F", "-r", "4", "-m", "8"][..],
    ] {
        let a = call(args);
        let b = call(args);
        assert_eq!(a.0, 0);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn corrupt_cache_is_ignored_with_warning() {
    let path = scratch("corrupt.jsonl");
    std::fs::write(&path, "{not json\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out, err) = call(&["classify", "-t", "A", "-r", "2", "-l", "1,1", "--cache", p]);
    assert_eq!(code, 0);
    assert!(err.contains("warning: ignoring corrupt cache line 1"), "{err}");
    let fresh = call(&["classify", "-t", "A", "-r", "2", "-l", "1,1"]).1;
    assert_eq!(out, fresh);
    let again = call(&["classify", "-t", "A", "-r", "2", "-l", "1,1", "--cache", p]);
    assert_eq!(again.1, fresh);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn cache_env_overrides_flag() {
    let env_path = scratch("env.jsonl");
    let flag_path = scratch("flag.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(["classify", "-t", "G", "-r", "2", "-l", "0,-1", "--cache"])
        .arg(&flag_path)
        .env("SCHUBERT_CACHE", &env_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(env_path.exists());
    assert!(!flag_path.exists());
    let _ = std::fs::remove_file(&env_path);
}

#[derive(Debug, PartialEq)]
enum Tok {
    Id(String),
    Sym(char),
    Arrow,
}

fn tokenize(src: &str) -> Vec<Tok> {
    let mut toks = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '/' => {
                chars.next();
                assert_eq!(chars.next(), Some('/'), "stray slash");
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next().expect("unterminated string") {
                        '"' => break,
                        '\\' => s.push(chars.next().unwrap()),
                        c => s.push(c),
                    }
                }
                toks.push(Tok::Id(s));
            }
            '-' => {
                chars.next();
                assert_eq!(chars.next(), Some('>'), "bad edge operator");
                toks.push(Tok::Arrow);
            }
            '{' | '}' | '[' | ']' | ';' | '=' | ',' => {
                chars.next();
                toks.push(Tok::Sym(c));
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '.') {
                    s.push(chars.next().unwrap());
                }
                toks.push(Tok::Id(s));
            }
            other => panic!("unexpected character {other:?}"),
        }
    }
    toks
}

/// Parsed DOT: nodes with attributes, and edges.
#[derive(Default)]
struct Graph {
    nodes: Vec<(String, Vec<(String, String)>)>,
    edges: Vec<(String, String)>,
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> &Tok {
        self.pos += 1;
        self.toks.get(self.pos - 1).expect("unexpected end of input")
    }
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn id(&mut self) -> String {
        match self.next() {
            Tok::Id(s) => s.clone(),
            t => panic!("expected identifier, got {t:?}"),
        }
    }
    fn sym(&mut self, c: char) {
        assert_eq!(self.next(), &Tok::Sym(c));
    }
    fn attrs(&mut self) -> Vec<(String, String)> {
        self.sym('[');
        let mut out = Vec::new();
        loop {
            if self.peek() == Some(&Tok::Sym(']')) {
                self.next();
                return out;
            }
            let k = self.id();
            self.sym('=');
            out.push((k, self.id()));
            if self.peek() == Some(&Tok::Sym(',')) {
                self.next();
            }
        }
    }
    fn stmts(&mut self, g: &mut Graph) {
        loop {
            match self.peek() {
                Some(Tok::Sym('}')) => {
                    self.next();
                    return;
                }
                Some(Tok::Sym('{')) => {
                    self.next();
                    self.stmts(g);
                }
                Some(Tok::Sym(';')) => {
                    self.next();
                }
                Some(Tok::Id(_)) => {
                    let a = self.id();
                    match self.peek() {
                        Some(Tok::Arrow) => {
                            self.next();
                            let b = self.id();
                            g.edges.push((a, b));
                        }
                        Some(Tok::Sym('=')) => {
                            self.next();
                            self.id();
                        }
                        Some(Tok::Sym('[')) => {
                            let at = self.attrs();
                            if a != "node" && a != "edge" && a != "graph" {
                                g.nodes.push((a, at));
                            }
                        }
                        _ => g.nodes.push((a, vec![])),
                    }
                }
                t => panic!("unexpected token {t:?}"),
            }
        }
    }
}

fn parse_dot(src: &str) -> Graph {
    let mut p = Parser { toks: tokenize(src), pos: 0 };
    assert_eq!(p.id(), "digraph");
    p.id();
    p.sym('{');
    let mut g = Graph::default();
    p.stmts(&mut g);
    assert!(p.peek().is_none(), "trailing tokens");
    g
}

#[test]
fn hasse_a2_double_circles_at_level_four() {
    let (code, out, _) = call(&["hasse", "--type", "A", "--rank", "2", "--max-len", "4", "--format", "dot"]);
    assert_eq!(code, 0);
    let g = parse_dot(&out);
    let has = |attrs: &[(String, String)], k: &str, v: &str| attrs.iter().any(|(a, b)| a == k && b == v);
    let declared: BTreeSet<&str> = g.nodes.iter().filter(|n| !n.1.is_empty()).map(|n| n.0.as_str()).collect();
    assert_eq!(declared.len(), 1 + 1 + 2 + 2 + 3);
    for (a, b) in &g.edges {
        assert!(declared.contains(a.as_str()) && declared.contains(b.as_str()));
    }
    let double: BTreeSet<&str> = g
        .nodes
        .iter()
        .filter(|n| has(&n.1, "peripheries", "2"))
        .map(|n| n.0.as_str())
        .collect();
    assert_eq!(double, BTreeSet::from(["1,1", "-1,2", "2,-1"]));
    let circled: BTreeSet<&str> =
        g.nodes.iter().filter(|n| has(&n.1, "shape", "circle")).map(|n| n.0.as_str()).collect();
    assert_eq!(circled, BTreeSet::from(["1,1", "-1,2", "2,-1", "0,3", "3,0"]));
}

#[test]
fn dot_parses_for_several_types() {
    for (t, r, m) in [("B", "3", "7"), ("G", "2", "9"), ("D", "4", "5"), ("A", "1", "6")] {
        let (code, out, _) = call(&["hasse", "-t", t, "-r", r, "-m", m]);
        assert_eq!(code, 0);
        let g = parse_dot(&out);
        assert!(!g.nodes.is_empty());
    }
}
