mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Format};
use commands::{exit_code, Run};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let run = Run::new(&cli.command);
    let format = run.config.format;
    let code = match run.execute(&cli.command) {
        Ok(sections) => {
            let code = exit_code(&sections);
            match format {
                Format::Text => {
                    println!("{}", run.config);
                    for s in &sections {
                        match s.j {
                            Some(j) => println!("\n== {} j={j} ==", s.command),
                            None => println!("\n== {} ==", s.command),
                        }
                        println!("{}", s.text);
                    }
                    println!("\nexit {code}");
                }
                Format::Json => {
                    let doc = json!({ "config": run.config, "sections": sections, "exit_code": code });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
                }
            }
            code
        }
        Err(e) => {
            match format {
                Format::Text => println!("{}", run.config),
                Format::Json => {
                    let doc = json!({ "config": run.config, "error": e.0, "exit_code": 2 });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
                }
            }
            eprintln!("error: {}", e.0);
            2
        }
    };
    ExitCode::from(code as u8)
}
