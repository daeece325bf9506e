#include <doctest.h>

#include <fstream>
#include <thread>

#include <unistd.h>

#include "gaudin/cache.hpp"
#include "gaudin/io.hpp"

using namespace gaudin;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("gaudin_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("rational strings round trip") {
  for (const char* s : {"0", "3", "-1/2", "7/3", "-12"}) {
    Json j = s;
    CHECK(to_json(rational_from_json(j)) == j);
  }
  CHECK(to_json(make_rational(4, 2)) == Json("2"));
  CHECK(rational_from_json(Json(5)) == Rational(5));
}

TEST_CASE("weights and partitions round trip") {
  Weight w;
  w.set(HalfIndex::integer(2), 3);
  w.set(HalfIndex::half_below(0), -1);
  w.set_level(Rational(1, 2));
  Json j = to_json(w);
  CHECK(weight_from_json(j) == w);
  CHECK(j["level"] == "1/2");

  Partition la({3, 1, 1});
  CHECK(partition_from_json(to_json(la)) == la);
}

TEST_CASE("complex parsing") {
  CHECK(complex_from_json(Json::array({1.5, -2})) == cplx(1.5, -2));
  CHECK(complex_from_json(Json(3)) == cplx(3, 0));
}

TEST_CASE("content hash is stable") {
  CHECK(content_hash("") == "cbf29ce484222325");
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
  CHECK(content_hash("ab") != content_hash("ba"));
}

TEST_CASE("cache store and lookup") {
  Cache c(scratch("store"));
  CHECK_FALSE(c.lookup("k").has_value());
  Json v{{"x", 1}, {"y", Json::array({"1/2"})}};
  c.store("k", v);
  auto got = c.lookup("k");
  REQUIRE(got.has_value());
  CHECK(*got == v);
  c.store("k", Json(2));
  CHECK(*c.lookup("k") == Json(2));
  fs::remove_all(c.root());
}

TEST_CASE("corrupt cache entries are discarded") {
  Cache c(scratch("corrupt"));
  c.store("k", Json(1));
  {
    std::ofstream out(c.entry("k"), std::ios::trunc);
    out << "{\"key\": \"k\", \"val";
  }
  CHECK_FALSE(c.lookup("k").has_value());
  CHECK_FALSE(fs::exists(c.entry("k")));

  // a well-formed document stored under the wrong key is rejected too
  {
    std::ofstream out(c.entry("k"));
    out << Json{{"key", "other"}, {"value", 1}}.dump();
  }
  CHECK_FALSE(c.lookup("k").has_value());
  fs::remove_all(c.root());
}

TEST_CASE("concurrent writers leave one complete entry") {
  Cache c(scratch("concurrent"));
  Json big = Json::array();
  for (int i = 0; i < 2000; ++i) big.push_back(std::to_string(i) + "/7");
  std::vector<std::thread> workers;
  for (int w = 0; w < 8; ++w)
    workers.emplace_back([&] {
      for (int r = 0; r < 20; ++r) c.store("shared", big);
    });
  for (auto& t : workers) t.join();
  auto got = c.lookup("shared");
  REQUIRE(got.has_value());
  CHECK(*got == big);
  int files = 0;
  for (const auto& e : fs::directory_iterator(c.root())) {
    (void)e;
    ++files;
  }
  CHECK(files == 1);
  fs::remove_all(c.root());
}
