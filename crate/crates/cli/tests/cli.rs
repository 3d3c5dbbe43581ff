use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bwca(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bwca"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

const TEXT: &str = "It was the best of times, it was the worst of times; \
    the season of Light, the season of Darkness * and \\ backslashes. 1775!\n";

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("f.txt"), TEXT.repeat(20)).unwrap();
    let out = bwca(&["build-dict", "f.txt", "-o", "d.dic"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    dir
}

#[test]
fn dict_roundtrip_through_files() {
    let dir = setup();
    let p = dir.path();
    let out = bwca(
        &["compress", "f.txt", "-o", "f.bwca", "--method", "dict-bwca", "--dict", "d.dic"],
        p,
    );
    assert_eq!(out.status.code(), Some(0));
    let out = bwca(&["decompress", "f.bwca", "-o", "g.txt", "--dict", "d.dic"], p);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read(p.join("g.txt")).unwrap(), fs::read(p.join("f.txt")).unwrap());
    assert_eq!(&fs::read(p.join("f.bwca")).unwrap()[..6], b"BWCA\x01\x03");
}

#[test]
fn every_method_roundtrips() {
    let dir = setup();
    let p = dir.path();
    for method in ["bwca", "proposed", "dict-bwca", "dict-proposed"] {
        let mut args = vec!["compress", "f.txt", "-o", "x.bwca", "--method", method, "--block-size", "37"];
        if method.starts_with("dict") {
            args.extend(["--dict", "d.dic"]);
        }
        assert_eq!(bwca(&args, p).status.code(), Some(0), "{method}");
        let out = bwca(&["decompress", "x.bwca", "-o", "y.txt", "--dict", "d.dic"], p);
        assert_eq!(out.status.code(), Some(0), "{method}");
        assert_eq!(fs::read(p.join("y.txt")).unwrap(), TEXT.repeat(20).as_bytes());
    }
}

#[test]
fn usage_errors_exit_one() {
    let dir = setup();
    let p = dir.path();
    let out = bwca(&["compress", "f.txt", "-o", "f.bwca", "--method", "dict-bwca"], p);
    assert_eq!(out.status.code(), Some(1));
    assert!(!p.join("f.bwca").exists());

    let out = bwca(&["frobnicate"], p);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = bwca(&["compress", "f.txt", "-o", "x", "--bogus"], p);
    assert_eq!(out.status.code(), Some(1));

    let out = bwca(&["compress", "f.txt", "-o", "x", "--method", "lzw"], p);
    assert_eq!(out.status.code(), Some(1));

    let out = bwca(&["--help"], p);
    assert_eq!(out.status.code(), Some(0));
    let out = bwca(&["compress", "--help"], p);
    let help = String::from_utf8_lossy(&out.stdout);
    assert!(help.contains("[default: bwca]") && help.contains("[default: 100]"), "{help}");
}

#[test]
fn io_and_format_errors_exit_two() {
    let dir = setup();
    let p = dir.path();
    let out = bwca(&["compress", "missing.txt", "-o", "x", "--method", "bwca"], p);
    assert_eq!(out.status.code(), Some(2));

    fs::write(p.join("junk.bwca"), b"NOPE").unwrap();
    let out = bwca(&["decompress", "junk.bwca", "-o", "x"], p);
    assert_eq!(out.status.code(), Some(2));

    fs::write(p.join("other.txt"), "completely unrelated vocabulary here").unwrap();
    assert!(bwca(&["build-dict", "other.txt", "-o", "other.dic"], p).status.success());
    bwca(&["compress", "f.txt", "-o", "f.bwca", "--method", "dict-proposed", "--dict", "d.dic"], p);
    let out = bwca(&["decompress", "f.bwca", "-o", "g.txt", "--dict", "other.dic"], p);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("wrong dictionary"));
}

#[test]
fn verify_reports_roundtrip_failures() {
    let dir = setup();
    let p = dir.path();
    assert_eq!(bwca(&["verify", "f.txt", "--method", "bwca"], p).status.code(), Some(0));
    let out = bwca(&["verify", "f.txt", "--method", "dict-proposed", "--dict", "d.dic"], p);
    assert_eq!(out.status.code(), Some(0));
    let out = bwca(&["verify", "f.txt", "--method", "bwca", "--inject-fault"], p);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn dump_stages_writes_intermediate_files() {
    let dir = setup();
    let p = dir.path();
    fs::create_dir(p.join("out")).unwrap();
    let out = bwca(
        &[
            "compress", "f.txt", "-o", "out/f.bwca", "--method", "dict-bwca", "--dict", "d.dic",
            "--dump-stages",
        ],
        p,
    );
    assert_eq!(out.status.code(), Some(0));
    for name in ["DICTIONARY.txt", "BWT.txt", "MTF.txt", "RLE.txt", "HUFFMAN.txt"] {
        assert!(p.join("out").join(name).exists(), "{name}");
    }
    assert_eq!(fs::read(p.join("out/BWT.txt")).unwrap().len(), 100);
}

#[test]
fn unknown_words_update_the_dictionary() {
    let dir = setup();
    let p = dir.path();
    fs::write(p.join("new.txt"), "Zanzibar quokkas wander").unwrap();
    let out = bwca(
        &[
            "compress", "new.txt", "-o", "n.bwca", "--method", "dict-bwca", "--dict", "d.dic",
            "--unknown-log", "unknown.log",
        ],
        p,
    );
    assert_eq!(out.status.code(), Some(0));
    let log = fs::read_to_string(p.join("unknown.log")).unwrap();
    assert_eq!(log, "Zanzibar\t1\nquokkas\t1\nwander\t1\n");

    let out = bwca(&["update-dict", "d.dic", "unknown.log", "-o", "d2.dic"], p);
    assert_eq!(out.status.code(), Some(0));
    let updated = fs::read_to_string(p.join("d2.dic")).unwrap();
    assert!(updated.contains("Zanzibar\t1\n"));

    // the old container still needs the old dictionary
    let out = bwca(&["decompress", "n.bwca", "-o", "n.txt", "--dict", "d2.dic"], p);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_writes_report_and_series() {
    let dir = setup();
    let p = dir.path();
    let corpus = corpus_dir();
    let corpus = corpus.to_str().unwrap();
    assert!(bwca(&["build-dict", corpus, "-o", "corpus.dic"], p).status.success());
    let out = bwca(
        &[
            "bench", corpus, "--methods", "bwca,dict-bwca", "--dict", "corpus.dic", "-o",
            "report.csv",
        ],
        p,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = fs::read_to_string(p.join("report.csv")).unwrap();
    let lines: Vec<&str> = report.lines().collect();
    assert_eq!(
        lines[0],
        "File,OriginalSize,CompressedSize_BWCA,CompressedSize_DICT_BWCA,CR_BWCA,CR_DICT_BWCA"
    );
    let files = fs::read_dir(corpus_dir()).unwrap().count();
    assert_eq!(lines.len(), files + 2);
    assert!(lines.last().unwrap().starts_with("Avg.,"));
    for series in ["average_sizes", "compressed_sizes", "compression_ratios", "average_ratios"] {
        assert!(p.join(format!("report.{series}.csv")).exists(), "{series}");
    }
    let averages = fs::read_to_string(p.join("report.average_ratios.csv")).unwrap();
    assert_eq!(averages.lines().count(), 3);

    let out = bwca(&["bench", corpus, "--methods", "dict-bwca", "-o", "r.csv"], p);
    assert_eq!(out.status.code(), Some(1));
}
