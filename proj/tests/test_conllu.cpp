#include <doctest.h>

#include <sstream>

#include "hype/conllu.hpp"

using namespace hype::corpus;

namespace {

const char* kParrotConllu =
    "# sent_id = 1\n"
    "1\tparrot\tparrot\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
    "2\tis\tbe\tVERB\t_\t_\t0\tROOT\t_\t_\n"
    "3\ta\ta\tDET\t_\t_\t4\tdet\t_\t_\n"
    "4\tbird\tbird\tNOUN\t_\t_\t2\tattr\t_\t_\n"
    "\n";

ParsedCorpus parse(const std::string& text) {
  std::istringstream in(text);
  return parse_conllu(in);
}

}  // namespace

TEST_CASE("parses the copular example sentence") {
  ParsedCorpus result = parse(kParrotConllu);
  REQUIRE(result.sentences.size() == 1);
  CHECK(result.rejected == 0);
  const Sentence& s = result.sentences[0];
  REQUIRE(s.size() == 4);
  CHECK(s.at(1).lemma == "parrot");
  CHECK(s.at(1).head == 2);
  CHECK(s.at(1).deprel == "nsubj");
  CHECK(s.at(2).lemma == "be");
  CHECK(s.at(2).head == 0);
  CHECK(s.at(4).deprel == "attr");
  CHECK(s.is_valid_tree());
}

TEST_CASE("empty stream gives an empty corpus") {
  ParsedCorpus result = parse("");
  CHECK(result.sentences.empty());
  CHECK(result.rejected == 0);
}

TEST_CASE("lemma column is lowercased") {
  ParsedCorpus result = parse("1\tParis\tParis\tPROPN\t_\t_\t0\tROOT\t_\t_\n\n");
  REQUIRE(result.sentences.size() == 1);
  CHECK(result.sentences[0].at(1).lemma == "paris");
  CHECK(result.sentences[0].at(1).form == "Paris");
}

TEST_CASE("self-headed token rejects the sentence, not the stream") {
  std::string text =
      "1\ta\ta\tNOUN\t_\t_\t1\tnsubj\t_\t_\n"
      "\n" +
      std::string(kParrotConllu);
  ParsedCorpus result = parse(text);
  CHECK(result.rejected == 1);
  REQUIRE(result.sentences.size() == 1);
  CHECK(result.sentences[0].at(1).lemma == "parrot");
}

TEST_CASE("multi-root and cyclic sentences are rejected and counted") {
  ParsedCorpus multi_root = parse(
      "1\ta\ta\tNOUN\t_\t_\t0\tROOT\t_\t_\n"
      "2\tb\tb\tNOUN\t_\t_\t0\tROOT\t_\t_\n"
      "\n");
  CHECK(multi_root.rejected == 1);
  CHECK(multi_root.sentences.empty());

  ParsedCorpus cyclic = parse(
      "1\ta\ta\tNOUN\t_\t_\t2\tdep\t_\t_\n"
      "2\tb\tb\tNOUN\t_\t_\t3\tdep\t_\t_\n"
      "3\tc\tc\tNOUN\t_\t_\t1\tdep\t_\t_\n"
      "4\td\td\tVERB\t_\t_\t0\tROOT\t_\t_\n"
      "\n");
  CHECK(cyclic.rejected == 1);

  ParsedCorpus out_of_range = parse("1\ta\ta\tNOUN\t_\t_\t9\tdep\t_\t_\n\n");
  CHECK(out_of_range.rejected == 1);
}

TEST_CASE("malformed lines raise errors naming the line") {
  CHECK_THROWS_WITH_AS(parse("1\tonly\tthree\tcolumns\n"),
                       doctest::Contains("line 1"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse("x\ta\ta\tNOUN\t_\t_\t0\tROOT\t_\t_\n"),
                       doctest::Contains("bad token ID"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse("2\ta\ta\tNOUN\t_\t_\t0\tROOT\t_\t_\n"),
                       doctest::Contains("out of sequence"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse("1\ta\ta\tNOUN\t_\t_\tz\tROOT\t_\t_\n"),
                       doctest::Contains("bad HEAD"), std::runtime_error);
}

TEST_CASE("comments, multiword tokens and empty nodes are skipped") {
  std::string text =
      "# newdoc\n"
      "1-2\tisn't\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tis\tbe\tVERB\t_\t_\t0\tROOT\t_\t_\n"
      "1.1\tghost\tghost\tNOUN\t_\t_\t_\t_\t_\t_\n"
      "2\tgood\tgood\tADJ\t_\t_\t1\tacomp\t_\t_\n"
      "\n";
  ParsedCorpus result = parse(text);
  REQUIRE(result.sentences.size() == 1);
  CHECK(result.sentences[0].size() == 2);
}

TEST_CASE("windows line endings are tolerated") {
  ParsedCorpus result = parse("1\ta\ta\tNOUN\t_\t_\t0\tROOT\t_\t_\r\n\r\n");
  REQUIRE(result.sentences.size() == 1);
}
