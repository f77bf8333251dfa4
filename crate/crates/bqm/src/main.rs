use std::io::Read;
use std::process::ExitCode;

use bqm::api::{class_options, handle, ApiError, Reply, Route};
use bqm::verify::{run_all, Criterion};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "bqm", version, about = "Braid groups of mutation-Dynkin quivers")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A quiver as JSON, or a Dynkin type; `--input` gives the whole request body instead.
#[derive(Args, Default)]
struct Source {
    #[arg(long)]
    quiver: Option<String>,
    #[arg(long = "type")]
    ty: Option<String>,
    /// Full request body: inline JSON, `@file`, or `-` for stdin.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate a quiver at a vertex or along a path.
    Mutate {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        vertex: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        path: Option<Vec<u32>>,
    },
    /// Mutation class up to isomorphism.
    Class {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        no_members: bool,
    },
    /// Presentation of B_Q.
    Present {
        #[command(flatten)]
        src: Source,
        /// Add the squares s_i², giving the Weyl group.
        #[arg(long)]
        coxeter: bool,
    },
    /// The isomorphism B_Q → B_{μ_k Q} at a vertex.
    Phi {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        vertex: u32,
        #[arg(long)]
        inverse: bool,
    },
    /// Decide whether two words are equal in the braid group.
    Wordeq {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        w1: Option<String>,
        #[arg(long)]
        w2: Option<String>,
        #[arg(long)]
        verbose: bool,
    },
    #[command(subcommand)]
    Surface(SurfaceCmd),
    #[command(subcommand)]
    Qp(QpCmd),
    #[command(subcommand)]
    K0(K0Cmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Args)]
struct TriSource {
    #[arg(long)]
    triangulation: Option<String>,
    #[arg(long = "type")]
    ty: Option<String>,
    #[arg(long)]
    input: Option<String>,
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Flip an arc, given by its 1-based position or as JSON.
    Flip {
        #[command(flatten)]
        src: TriSource,
        #[arg(long)]
        vertex: Option<u32>,
        #[arg(long)]
        arc: Option<String>,
    },
    /// The quiver of a triangulation.
    Quiver {
        #[command(flatten)]
        src: TriSource,
    },
    /// Count or list all tagged triangulations.
    Enumerate {
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        input: Option<String>,
    },
}

#[derive(Args)]
struct QpSource {
    #[arg(long)]
    qp: Option<String>,
    #[command(flatten)]
    src: Source,
}

#[derive(Subcommand)]
enum QpCmd {
    /// Mutate a quiver with potential and reduce.
    Mutate {
        #[command(flatten)]
        src: QpSource,
        #[arg(long)]
        vertex: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        path: Option<Vec<u32>>,
    },
    /// Check the potential is a rescaled sum of chordless cycles.
    Check {
        #[command(flatten)]
        src: QpSource,
    },
}

#[derive(Subcommand)]
enum K0Cmd {
    /// Check the relators act trivially on K₀.
    Verify {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        pullback: Option<u32>,
        #[arg(long)]
        matrices: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run every verification sweep.
    All {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
}

enum Failure {
    Input(String),
    Verification,
}

impl From<ApiError> for Failure {
    fn from(e: ApiError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(arg: &str) -> Result<String, Failure> {
    let io = |e: std::io::Error| Failure::Input(format!("cannot read input: {e}"));
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(io)
    } else {
        Ok(arg.to_string())
    }
}

fn json_arg(name: &str, s: &str) -> Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::Input(format!("--{name}: {e}")))
}

/// Builds a request object from flags; `--input` replaces it wholesale.
struct Request {
    input: Option<String>,
    fields: Map<String, Value>,
}

impl Request {
    fn new(input: Option<String>) -> Self {
        Request { input, fields: Map::new() }
    }

    fn source(src: Source) -> Result<Self, Failure> {
        let mut r = Request::new(src.input);
        r.json("quiver", src.quiver)?;
        r.set("type", src.ty);
        Ok(r)
    }

    fn set(&mut self, key: &str, v: Option<impl Into<Value>>) {
        if let Some(v) = v {
            self.fields.insert(key.into(), v.into());
        }
    }

    fn flag(&mut self, key: &str, on: bool) {
        if on {
            self.fields.insert(key.into(), Value::Bool(true));
        }
    }

    fn json(&mut self, key: &str, v: Option<String>) -> Result<(), Failure> {
        if let Some(s) = v {
            self.fields.insert(key.into(), json_arg(key, &s)?);
        }
        Ok(())
    }

    fn body(self) -> Result<String, Failure> {
        match self.input {
            Some(arg) if self.fields.is_empty() => read_input(&arg),
            Some(_) => Err(Failure::Input("--input cannot be combined with other request flags".into())),
            None => Ok(Value::Object(self.fields).to_string()),
        }
    }
}

fn tri_request(src: TriSource) -> Result<Request, Failure> {
    let mut r = Request::new(src.input);
    r.json("triangulation", src.triangulation)?;
    r.set("type", src.ty);
    Ok(r)
}

fn qp_request(src: QpSource) -> Result<Request, Failure> {
    let mut r = Request::source(src.src)?;
    r.json("qp", src.qp)?;
    Ok(r)
}

fn render_text(v: &Value) -> String {
    match v {
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n"),
        other => other.to_string(),
    }
}

fn emit(reply: &Reply, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => println!("{}", reply.to_json()),
        Format::Text => println!("{}", render_text(&reply.body)),
    }
    if reply.verification_failed {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

fn verify_all(max_rank: usize, format: Format) -> Result<(), Failure> {
    let results: Vec<Criterion> = run_all(max_rank, class_options());
    let pass = results.iter().all(|c| c.pass);
    match format {
        Format::Json => println!("{}", json!({ "max_rank": max_rank, "pass": pass, "criteria": results })),
        Format::Text => {
            for c in &results {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                println!("{verdict} {} ({:.1}s, limit {:.0}s): {}", c.name, c.seconds, c.limit_seconds, c.detail);
            }
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn serve(host: &str, port: u16) -> Result<(), Failure> {
    let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::Input(e.to_string()))?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port)).await.map_err(|e| Failure::Input(format!("cannot bind {host}:{port}: {e}")))?;
        eprintln!("listening on http://{}", listener.local_addr().map_err(|e| Failure::Input(e.to_string()))?);
        bqm::server::serve(listener).await.map_err(|e| Failure::Input(e.to_string()))
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (route, req) = match cli.command {
        Command::Mutate { src, vertex, path } => {
            let mut r = Request::source(src)?;
            r.set("vertex", vertex);
            r.set("path", path);
            (Route::Mutate, r)
        }
        Command::Class { src, no_members } => {
            let mut r = Request::source(src)?;
            if no_members {
                r.set("members", Some(false));
            }
            (Route::Class, r)
        }
        Command::Present { src, coxeter } => {
            let mut r = Request::source(src)?;
            r.flag("coxeter", coxeter);
            (Route::Presentation, r)
        }
        Command::Phi { src, vertex, inverse } => {
            let mut r = Request::source(src)?;
            r.set("vertex", Some(vertex));
            r.flag("inverse", inverse);
            (Route::Phi, r)
        }
        Command::Wordeq { src, w1, w2, verbose } => {
            let mut r = Request::source(src)?;
            r.set("w1", w1);
            r.set("w2", w2);
            r.flag("verbose", verbose);
            (Route::WordEq, r)
        }
        Command::Surface(SurfaceCmd::Flip { src, vertex, arc }) => {
            let mut r = tri_request(src)?;
            r.set("vertex", vertex);
            r.json("arc", arc)?;
            (Route::SurfaceFlip, r)
        }
        Command::Surface(SurfaceCmd::Quiver { src }) => (Route::SurfaceQuiver, tri_request(src)?),
        Command::Surface(SurfaceCmd::Enumerate { ty, list, input }) => {
            let mut r = Request::new(input);
            r.set("type", ty);
            r.flag("list", list);
            (Route::SurfaceEnumerate, r)
        }
        Command::Qp(QpCmd::Mutate { src, vertex, path }) => {
            let mut r = qp_request(src)?;
            r.set("vertex", vertex);
            r.set("path", path);
            (Route::QpMutate, r)
        }
        Command::Qp(QpCmd::Check { src }) => (Route::QpCheck, qp_request(src)?),
        Command::K0(K0Cmd::Verify { src, pullback, matrices }) => {
            let mut r = Request::source(src)?;
            r.set("pullback", pullback);
            r.flag("matrices", matrices);
            (Route::K0Verify, r)
        }
        Command::Verify(VerifyCmd::All { max_rank }) => return verify_all(max_rank, cli.format),
        Command::Serve { port, host } => return serve(&host, port),
    };
    let reply = handle(route, &req.body()?)?;
    emit(&reply, cli.format)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", first.trim_start_matches("error: ").trim());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
