use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

mod commands;
mod doc;
mod report;

use commands::{Options, Output};

/// Monoids, fans, blowups and resolutions from a small text description.
#[derive(Parser, Debug)]
#[command(name = "monofan", version)]
struct Args {
    /// One of: faces, spec, saturate, sharpen, units, blowup, proj, classify-refinement, resolve,
    /// boundary, boundary-depth, tame, ring-presentation, profile, predicates, contains,
    /// integralize, transfer, smoothness, show.
    command: String,
    /// Input document; standard input when omitted.
    file: Option<PathBuf>,
    /// Emit the specialization poset as a DOT graph (spec, resolve).
    #[arg(long)]
    dot: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Replace presented monoids by their integral quotients where an embedded monoid is needed.
    #[arg(long)]
    integralize: bool,
}

const EXIT_DOMAIN: u8 = 1;
const EXIT_PARSE: u8 = 2;

fn main() -> ExitCode {
    let args = Args::parse();
    if !doc::COMMANDS.contains(&args.command.as_str()) {
        eprintln!("error: unknown command '{}'", args.command);
        return ExitCode::from(EXIT_PARSE);
    }
    let text = match &args.file {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let document = match doc::parse(&text) {
        Ok(d) => d,
        Err(f) => {
            for d in &f.diagnostics {
                eprintln!("error: {d}");
            }
            return ExitCode::from(if f.semantic { EXIT_DOMAIN } else { EXIT_PARSE });
        }
    };
    let requests = match commands::requests_for(&document, &args.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            return ExitCode::from(EXIT_DOMAIN);
        }
    };
    let opts = Options { dot: args.dot, integralize: args.integralize };
    let mut text_out = String::new();
    let mut json_out = Vec::new();
    for (k, req) in requests.iter().enumerate() {
        let title = std::iter::once(req.command.clone())
            .chain(req.operands.iter().map(ToString::to_string))
            .collect::<Vec<_>>()
            .join(" ");
        let out = match commands::run(&document, req, opts) {
            Ok(o) => o,
            Err(e) => {
                print!("{text_out}");
                let at = if req.line > 0 { format!("line {}: ", req.line) } else { String::new() };
                eprintln!("error[{}]: {at}{title}: {e}", e.code());
                return ExitCode::from(EXIT_DOMAIN);
            }
        };
        match out {
            Output::Dot(d) => text_out.push_str(&d),
            Output::Report(r) if args.json => {
                json_out.push(serde_json::json!({ "request": title, "result": r.to_json() }));
            }
            Output::Report(r) => {
                if k > 0 {
                    text_out.push('\n');
                }
                text_out.push_str(&format!("# {title}\n"));
                text_out.push_str(&r.render());
            }
        }
    }
    if args.json && !args.dot {
        let v = serde_json::Value::Array(json_out);
        println!("{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
    } else {
        print!("{text_out}");
    }
    ExitCode::SUCCESS
}
