#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "symtag/cli.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "symtag");
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = symtag::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("symtag_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = "") const {
    const auto p = (path_ / name).string();
    if (!content.empty()) std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("validate exit codes") {
  TempDir d;
  const auto good = d.file("good.conll", testutil::kExampleText);
  const auto bad = d.file("bad.conll", "fever\tI-SYM\n\n");
  CHECK(cli({"validate", good}).code == symtag::cli::kExitOk);
  const Run r = cli({"validate", bad});
  CHECK(r.code == symtag::cli::kExitOk);
  CHECK(r.out == "0\t0\torphan-inside\n");
  CHECK(cli({"validate", "--strict", bad}).code == symtag::cli::kExitDataError);
  CHECK(cli({"validate", d.file("missing.conll")}).code == symtag::cli::kExitDataError);
  CHECK(cli({"validate", "-"}, "x\tB_SYM\n").code == symtag::cli::kExitDataError);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).code == symtag::cli::kExitUsage);
  CHECK(cli({"frobnicate"}).code == symtag::cli::kExitUsage);
  CHECK(cli({"eval", "--gold", "x"}).code == symtag::cli::kExitUsage);
  CHECK(cli({"mix", "a", "b", "c", "--size", "ten"}).code == symtag::cli::kExitUsage);
  CHECK(cli({"stats", "-", "--digits", "9"}).code == symtag::cli::kExitUsage);
}

TEST_CASE("stats and eval") {
  TempDir d;
  const auto ex = d.file("example.conll", testutil::kExampleText);
  const Run s = cli({"stats", ex, "--format", "csv"});
  CHECK(s.code == 0);
  CHECK(s.out.find("example,1,2,2,100%,3,0%") != std::string::npos);

  const Run e = cli({"eval", "--gold", ex, "--pred", ex, "--format", "csv"});
  CHECK(e.code == 0);
  CHECK(e.out == "mode,TP,FP,FN,P,R,F1\nexact,2,0,0,1.00,1.00,1.00\npartial,2,0,0,1.00,1.00,1.00\n");

  const auto other = d.file("other.conll", "I\tO\n\n");
  CHECK(cli({"eval", "--gold", ex, "--pred", other}).code == symtag::cli::kExitDataError);

  const auto orphan = d.file("orphan.conll", "I\tO\nhave\tO\na\tO\nbad\tO\nheadache\tI-SYM\nand\tO\ncough\tB-SYM\na\tI-SYM\nlot\tI-SYM\n\n");
  const Run rep = cli({"eval", "--gold", ex, "--pred", orphan, "--match", "partial", "--format", "csv", "--by-length"});
  CHECK(rep.code == 0);
  CHECK(rep.err.find("repaired 1") != std::string::npos);
  CHECK(rep.out.find("partial,2,0,0") != std::string::npos);

  const auto fp = d.file("fp.tsv");
  const auto fn = d.file("fn.tsv");
  CHECK(cli({"eval", "--gold", ex, "--pred", orphan, "--fp-out", fp, "--fn-out", fn}).code == 0);
  CHECK(slurp(fp) == "headache\t1\n");
  CHECK(slurp(fn) == "bad headache\t1\n");
}

TEST_CASE("perturb is deterministic and pipes into eval") {
  TempDir d;
  const auto lex = testutil::fixture("sample_lexicon.tsv");
  const auto src = d.file("formal.conll", "patient\tO\nhas\tO\ndyspnea\tB-SYM\nand\tO\nfever\tO\n\n");
  const auto out1 = d.file("a.conll");
  const auto out2 = d.file("b.conll");
  const auto log = d.file("log.csv");
  CHECK(cli({"perturb", "--mode", "denormalize", "--lexicon", lex, "--seed", "4", "--log", log, src, out1}).code == 0);
  CHECK(cli({"perturb", "--mode", "denormalize", "--lexicon", lex, "--seed", "4", src, out2}).code == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(slurp(out1) != slurp(src));
  CHECK(slurp(log).rfind("sentence_index,old,new,variant_index\n0,dyspnea,", 0) == 0);

  const Run piped = cli({"perturb", "--mode", "denormalize", "--lexicon", lex, "--seed", "4", src, "-"});
  CHECK(piped.out == slurp(out1));
  const Run stats = cli({"stats", "-", "--format", "csv"}, piped.out);
  CHECK(stats.code == 0);
  CHECK(stats.out.find("stdin,1,1,1,100%") != std::string::npos);
  const Run self = cli({"eval", "--gold", out1, "--pred", "-", "--match", "exact", "--format", "csv"}, piped.out);
  CHECK(self.out.find("exact,1,0,0,1.00,1.00,1.00") != std::string::npos);

  const auto bad = d.file("bad.conll", "dyspnea\tI-SYM\n\n");
  CHECK(cli({"perturb", "--mode", "normalize", "--lexicon", lex, bad, out1}).code == symtag::cli::kExitDataError);
}

TEST_CASE("mix and synth") {
  TempDir d;
  const auto a = d.file("a.conll");
  const auto b = d.file("b.conll");
  REQUIRE(cli({"synth", a, "--sentences", "20", "--seed", "1"}).code == 0);
  REQUIRE(cli({"synth", b, "--sentences", "30", "--seed", "2", "--rate", "0.5", "--length-weights", "1,1"}).code == 0);
  const auto m1 = d.file("m1.conll");
  const auto m2 = d.file("m2.conll");
  CHECK(cli({"mix", a, b, m1, "--size", "auto", "--seed", "3"}).code == 0);
  CHECK(cli({"mix", a, b, m2, "--seed", "3"}).code == 0);
  CHECK(slurp(m1) == slurp(m2));
  const symtag::Corpus mixed = symtag::parse_corpus(slurp(m1));
  CHECK(mixed.size() == 24);
  CHECK(cli({"mix", a, b, m1, "--size", "50"}).code == symtag::cli::kExitDataError);
  CHECK(cli({"synth", a, "--length-weights", "1,x"}).code == symtag::cli::kExitUsage);
}

TEST_CASE("rank and report") {
  const auto appendix = testutil::fixture("appendix_table1.csv");
  const auto pf1 = testutil::fixture("table3_pf1.csv");
  const Run r = cli({"rank", "--grid", appendix, "--grid", pf1, "--group", "colloquial=CLQ-Test,MedHelp,iCliniq",
                     "--group", "formal=CORD-Test", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"5(0,3,2)\",\"0(-,-,0)\",5,") != std::string::npos);
  CHECK(cli({"rank", "--grid", appendix, "--group", "x=Nowhere"}).code == symtag::cli::kExitUsage);

  const Run g = cli({"report", "--grid", appendix, "--mark-top"});
  CHECK(g.code == 0);
  CHECK(g.out.find('*') != std::string::npos);

  TempDir d;
  const auto ex = d.file("example.conll", testutil::kExampleText);
  const Run lt = cli({"report", "--gold", ex, "--pred", ex, "--format", "csv"});
  CHECK(lt.code == 0);
  CHECK(lt.out == "Run,TP-1,TP-2,TP-3,TP-4+\nexample,n/a,100%,100%,n/a\n\nexample\t3\tcough a lot\n");
  CHECK(cli({"report"}).code == symtag::cli::kExitUsage);
}
