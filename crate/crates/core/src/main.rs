use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use classcone::chart::{CaptionPosition, ScaleMode};
use classcone::cli::{run, OutputFormat, RunConfig};
use classcone::LocMode;

/// Count methods, attributes and lines of code per Java class and draw them as cone charts.
#[derive(Debug, Parser)]
#[command(name = "classcone", version, about)]
struct Args {
    /// Source tree to analyze.
    #[arg(long)]
    root: PathBuf,
    /// Glob of files to parse, relative to the root (repeatable).
    #[arg(long, default_value = "**/*.java")]
    include: Vec<String>,
    /// Glob of files to skip (repeatable).
    #[arg(long)]
    exclude: Vec<String>,
    /// Class name glob, matched against simple or qualified names (repeatable).
    #[arg(long)]
    select: Vec<String>,
    /// physical or sloc.
    #[arg(long, default_value = "sloc")]
    loc_mode: LocMode,
    /// per_chart or global.
    #[arg(long, default_value = "per_chart")]
    scale: ScaleMode,
    /// above or below.
    #[arg(long, default_value = "above")]
    caption: CaptionPosition,
    /// Caption charts with qualified instead of simple names.
    #[arg(long)]
    qualified_captions: bool,
    /// Charts per row in grid.svg.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    columns: u32,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Comma-separated subset of svg,json,csv.
    #[arg(long, value_delimiter = ',', default_value = "svg,json,csv")]
    format: Vec<OutputFormat>,
    /// Fail when any file cannot be loaded or parsed.
    #[arg(long)]
    strict: bool,
    /// Also write structure.xml describing every extracted class.
    #[arg(long)]
    export_xml: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut formats = args.format;
    formats.sort();
    formats.dedup();
    let config = RunConfig {
        include: args.include,
        exclude: args.exclude,
        select: args.select,
        loc_mode: args.loc_mode,
        scale_mode: args.scale,
        caption_position: args.caption,
        qualified_captions: args.qualified_captions,
        columns: args.columns as usize,
        formats,
        strict: args.strict,
        export_xml: args.export_xml,
        ..RunConfig::new(args.root, args.out)
    };
    match run(&config, &mut io::stdout().lock(), &mut io::stderr().lock()) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
