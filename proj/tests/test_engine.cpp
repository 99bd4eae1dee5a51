#include <doctest.h>

#include <random>

#include "boat/engine.hpp"
#include "boat/oracle.hpp"
#include "support/random_frames.hpp"

using namespace boat;
using testsupport::random_frame;
using testsupport::random_permutation;

namespace {

Frame small_frame() {
  Frame f;
  f.add_column("label", Column::from_strings({"A", "A", "B"}));
  f.add_column("cost", Column::numeric(ColumnType::Money, {10, 20, 5}));
  return f;
}

}  // namespace

TEST_CASE("filter: equals on text") {
  Frame f;
  std::vector<std::string> ages;
  for (int i = 0; i < 10; ++i) ages.push_back(i < 3 ? "0 to 17" : "18 to 29");
  f.add_column("age_group", Column::from_strings(ages));
  auto out = filter(f, {FilterClause::eq("age_group", "0 to 17")});
  CHECK(out.row_count() == 3);
}

TEST_CASE("filter: empty conjunction is identity") {
  auto f = small_frame();
  auto out = filter(f, {});
  CHECK(out == f);
}

TEST_CASE("filter: errors") {
  auto f = small_frame();
  CHECK_THROWS_WITH_AS(filter(f, {FilterClause::eq("nope", "x")}), doctest::Contains("field-not-found"),
                       Error);
  CHECK_THROWS_WITH_AS(filter(f, {FilterClause::between("label", 1, 2)}),
                       doctest::Contains("predicate-type"), Error);
}

TEST_CASE("filter: between on money, order preserved") {
  auto f = small_frame();
  auto out = filter(f, {FilterClause::between("cost", 5, 10)});
  REQUIRE(out.row_count() == 2);
  CHECK(out.column("cost").as_int(0) == 10);
  CHECK(out.column("cost").as_int(1) == 5);
}

TEST_CASE("filter matches a naive scan on random frames") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 20; ++iter) {
    auto f = random_frame(rng, {.max_rows = 10000, .null_rate = 0.05});
    auto out = filter(f, {FilterClause::eq("diagnosis", "DIAG_C")});
    std::size_t expect = 0;
    const auto& col = f.column("diagnosis");
    for (std::size_t r = 0; r < f.row_count(); ++r)
      if (!col.is_null(r) && col.as_text(r) == "DIAG_C") ++expect;
    CHECK(out.row_count() == expect);
  }
}

TEST_CASE("group_aggregate: tiny sum example") {
  auto out = group_aggregate(small_frame(), {"label"}, {{"cost", AggFn::Sum, "total"}});
  REQUIRE(out.row_count() == 2);
  CHECK(out.column("label").as_text(0) == "A");
  CHECK(out.column("total").as_int(0) == 30);
  CHECK(out.column("label").as_text(1) == "B");
  CHECK(out.column("total").as_int(1) == 5);
  CHECK(out.column("total").type() == ColumnType::Money);
}

TEST_CASE("group_aggregate: empty frame keeps output columns") {
  Frame f;
  f.add_column("label", Column::from_strings({}));
  f.add_column("cost", Column::numeric(ColumnType::Money, {}));
  auto out = group_aggregate(f, {"label"}, {{"cost", AggFn::Sum, "total"}, {"", AggFn::Count, "n"}});
  CHECK(out.row_count() == 0);
  CHECK(out.column_names() == std::vector<std::string>{"label", "total", "n"});
}

TEST_CASE("group_aggregate: errors") {
  auto f = small_frame();
  CHECK_THROWS_WITH_AS(group_aggregate(f, {"ghost"}, {}), doctest::Contains("field-not-found"), Error);
  CHECK_THROWS_WITH_AS(group_aggregate(f, {"label"}, {{"label", AggFn::Sum, "s"}}),
                       doctest::Contains("aggregate-on-text"), Error);
}

TEST_CASE("sort_by: basics") {
  Frame f;
  f.add_column("v", Column::numeric(ColumnType::Integer, {3, 1, 2}));
  auto out = sort_by(f, "v", SortOrder::Ascending);
  CHECK(out.column("v").ints() == std::vector<std::int64_t>{1, 2, 3});

  auto same = sort_by(out, "v", SortOrder::Ascending);
  CHECK(same == out);

  CHECK_THROWS_WITH_AS(sort_by(f, "ghost", SortOrder::Ascending), doctest::Contains("field-not-found"),
                       Error);
}

TEST_CASE("sort_by: stable on ties and matches reference sort") {
  std::mt19937_64 rng(5);
  std::vector<std::int64_t> vals, tag;
  for (int i = 0; i < 10000; ++i) {
    vals.push_back(static_cast<std::int64_t>(rng() % 50));
    tag.push_back(i);
  }
  Frame f;
  f.add_column("v", Column::numeric(ColumnType::Integer, vals));
  f.add_column("tag", Column::numeric(ColumnType::Integer, tag));
  auto out = sort_by(f, "v", SortOrder::Ascending);

  std::vector<std::size_t> idx(vals.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
  for (std::size_t i = 0; i < idx.size(); ++i) {
    CHECK(out.column("v").as_int(i) == vals[idx[i]]);
    CHECK(out.column("tag").as_int(i) == tag[idx[i]]);
  }
}

TEST_CASE("top_n: basics") {
  Frame f;
  f.add_column("name", Column::from_strings({"x", "y", "z"}));
  f.add_column("v", Column::numeric(ColumnType::Integer, {5, 9, 1}));
  auto out = top_n(f, "v", 2);
  REQUIRE(out.row_count() == 2);
  CHECK(out.column("v").as_int(0) == 9);
  CHECK(out.column("v").as_int(1) == 5);

  auto all = top_n(f, "v", 10);
  CHECK(all.row_count() == 3);
  CHECK(all.column("v").as_int(0) == 9);
  CHECK(all.column("v").as_int(2) == 1);

  CHECK_THROWS_WITH_AS(top_n(f, "name", 1), doctest::Contains("aggregate-on-text"), Error);
}

TEST_CASE("describe: spec examples") {
  auto st = describe(Column::numeric(ColumnType::Integer, {1, 2, 3}));
  CHECK(st.n == 3);
  CHECK(*st.mean == doctest::Approx(2.0));
  CHECK(*st.std_sample == doctest::Approx(1.0));
  CHECK(*st.median == 2);
  CHECK(*st.min == 1);
  CHECK(*st.max == 3);

  auto one = describe(Column::numeric(ColumnType::Integer, {7}));
  CHECK(one.n == 1);
  CHECK(*one.mean == doctest::Approx(7.0));
  CHECK(!one.std_sample.has_value());

  auto none = describe(Column::numeric(ColumnType::Integer, {}));
  CHECK(none.n == 0);
  CHECK(!none.mean.has_value());
  CHECK(!none.min.has_value());
  CHECK(!none.median.has_value());
}

TEST_CASE("describe: median is lower-middle for even n") {
  auto st = describe(Column::numeric(ColumnType::Integer, {40, 10, 30, 20}));
  CHECK(*st.median == 20);
}

TEST_CASE("describe matches two-pass oracle on lognormal money") {
  std::mt19937_64 rng(123);
  std::lognormal_distribution<double> dist(14.0, 0.8);
  std::vector<std::int64_t> values;
  for (int i = 0; i < 100000; ++i) values.push_back(static_cast<std::int64_t>(dist(rng)));
  auto st = describe(Column::numeric(ColumnType::Money, values, {}));
  auto naive = boat::oracle::naive_describe(values);
  CHECK(st.n == naive.n);
  CHECK(st.sum == naive.sum);
  CHECK(*st.mean == doctest::Approx(*naive.mean).epsilon(1e-9));
  CHECK(*st.std_sample == doctest::Approx(*naive.std_sample).epsilon(1e-9));
}

TEST_CASE("histogram: spec examples") {
  std::vector<std::int64_t> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto h = histogram(Column::numeric(ColumnType::Integer, v), 0, 5, 2);
  CHECK(h.counts == std::vector<std::int64_t>{5, 5});
  CHECK(h.underflow == 0);
  CHECK(h.overflow == 0);

  // value exactly at lo + k*w is overflow
  auto edge = histogram(Column::numeric(ColumnType::Integer, {10}), 0, 5, 2);
  CHECK(edge.overflow == 1);
  CHECK(edge.counts == std::vector<std::int64_t>{0, 0});

  CHECK_THROWS_WITH_AS(histogram(Column::numeric(ColumnType::Integer, v), 0, 0, 2),
                       doctest::Contains("nonpositive-bin-width"), Error);
  CHECK_THROWS_WITH_AS(histogram(Column::numeric(ColumnType::Integer, v), 0, 5, 0),
                       doctest::Contains("invalid-bin-count"), Error);
}

TEST_CASE("fraction_below: spec examples") {
  auto col = Column::numeric(ColumnType::Integer, {1, 2, 3, 4});
  CHECK(fraction_below(col, 3) == doctest::Approx(0.5));
  CHECK(fraction_below(col, 100) == doctest::Approx(1.0));
  CHECK(fraction_below(col, 1) == doctest::Approx(0.0));
  CHECK_THROWS_WITH_AS(fraction_below(Column::numeric(ColumnType::Integer, {}), 1),
                       doctest::Contains("empty-column"), Error);
}

TEST_CASE("percentile: nearest rank") {
  auto col = Column::numeric(ColumnType::Integer, {10, 20, 30, 40});
  CHECK(percentile(col, 50) == 20);
  CHECK(percentile(col, 100) == 40);
  CHECK(percentile(col, 0) == 10);
  CHECK_THROWS_WITH_AS(percentile(col, 101), doctest::Contains("invalid-percentile"), Error);
  CHECK_THROWS_WITH_AS(percentile(Column::numeric(ColumnType::Integer, {}), 50),
                       doctest::Contains("empty-column"), Error);
}

TEST_CASE("percentile result is always an input element") {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<std::int64_t> v;
    auto n = 1 + rng() % 500;
    for (std::uint64_t i = 0; i < n; ++i) v.push_back(static_cast<std::int64_t>(rng() % 1000));
    auto col = Column::numeric(ColumnType::Integer, v);
    double p = static_cast<double>(rng() % 1001) / 10.0;
    auto result = percentile(col, p);
    CHECK(std::find(v.begin(), v.end(), result) != v.end());
    CHECK(result == boat::oracle::naive_percentile(v, p));
  }
}

// ---------------------------------------------------------------------------
// Oracle equivalence and determinism properties

TEST_CASE("group_aggregate equals naive oracle on random frames") {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 30; ++iter) {
    auto f = random_frame(rng);
    auto got = group_aggregate(f, {"diagnosis", "year"},
                               {{"cost", AggFn::Sum, "sum"},
                                {"cost", AggFn::Count, "n"},
                                {"cost", AggFn::Mean, "mean"},
                                {"cost", AggFn::Min, "min"},
                                {"cost", AggFn::Max, "max"},
                                {"cost", AggFn::StdSample, "std"},
                                {"cost", AggFn::CountNull, "n_null"}});
    auto table = boat::oracle::to_rows(f);
    auto expected = boat::oracle::naive_group_aggregate(table, {"diagnosis", "year"}, "cost");
    REQUIRE(got.row_count() == expected.size());
    // index oracle rows by key for comparison
    for (std::size_t r = 0; r < got.row_count(); ++r) {
      boat::oracle::Cell key0 = got.column("diagnosis").is_null(r)
                                    ? boat::oracle::Cell()
                                    : boat::oracle::Cell(got.column("diagnosis").as_text(r));
      boat::oracle::Cell key1 = got.column("year").is_null(r)
                                    ? boat::oracle::Cell()
                                    : boat::oracle::Cell(got.column("year").as_int(r));
      const boat::oracle::AggResult* match = nullptr;
      for (const auto& e : expected)
        if (e.key[0] == key0 && e.key[1] == key1) { match = &e; break; }
      REQUIRE(match != nullptr);
      CHECK(got.column("sum").as_int(r) == static_cast<std::int64_t>(match->sum));
      CHECK(got.column("n").as_int(r) == match->count);
      CHECK(got.column("n_null").as_int(r) == match->count_null);
      if (match->count == 0) {
        CHECK(got.column("mean").is_null(r));
        CHECK(got.column("min").is_null(r));
        CHECK(got.column("max").is_null(r));
      } else {
        CHECK(got.column("min").as_int(r) == *match->min);
        CHECK(got.column("max").as_int(r) == *match->max);
        // money mean is reported at cent precision
        CHECK(got.column("mean").as_int(r) == static_cast<std::int64_t>(std::llround(*match->mean)));
      }
      if (match->count < 2) {
        CHECK(got.column("std").is_null(r));
      } else {
        CHECK(got.column("std").as_real(r) == doctest::Approx(*match->std_sample).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("top_n equals naive oracle and is permutation invariant") {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 20; ++iter) {
    auto f = random_frame(rng, {.max_rows = 300});
    auto got = top_n(f, "cost", 11);
    auto table = boat::oracle::to_rows(f);
    auto idx = boat::oracle::naive_top_n(table, "cost", 11);
    REQUIRE(got.row_count() == idx.size());
    for (std::size_t r = 0; r < got.row_count(); ++r) {
      CHECK(got.column("cost").is_null(r) == !table.rows[idx[r]][3].has_value());
      if (!got.column("cost").is_null(r))
        CHECK(got.column("cost").as_int(r) == std::get<std::int64_t>(*table.rows[idx[r]][3]));
      CHECK(got.column("diagnosis").as_text(r) ==
            std::get<std::string>(*table.rows[idx[r]][0]));
    }

    auto shuffled = f.take(random_permutation(rng, f.row_count()));
    CHECK(top_n(shuffled, "cost", 11) == got);
  }
}

TEST_CASE("histogram and fraction_below equal naive oracles on random data") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 30; ++iter) {
    auto f = random_frame(rng);
    const auto& col = f.column("cost");
    std::vector<std::int64_t> values;
    for (std::size_t i = 0; i < col.size(); ++i)
      if (!col.is_null(i)) values.push_back(col.as_int(i));

    auto h = histogram(col, 0, 250000, 60);
    auto nh = boat::oracle::naive_histogram(values, 0, 250000, 60);
    CHECK(h.counts == nh.counts);
    CHECK(h.underflow == nh.underflow);
    CHECK(h.overflow == nh.overflow);
    CHECK(h.total_mass() == static_cast<std::int64_t>(values.size()));

    if (!values.empty()) {
      CHECK(fraction_below(col, 3000000) == boat::oracle::naive_fraction_below(values, 3000000));
      double p = static_cast<double>(rng() % 1001) / 10.0;
      CHECK(percentile(col, p) == boat::oracle::naive_percentile(values, p));
    }
  }
}

TEST_CASE("permutation determinism across all engine operations") {
  std::mt19937_64 rng(404);
  for (int iter = 0; iter < 10; ++iter) {
    auto f = random_frame(rng);
    auto shuffled = f.take(random_permutation(rng, f.row_count()));

    auto aggs = std::vector<AggregateSpec>{{"cost", AggFn::Sum, "sum"},
                                           {"cost", AggFn::Mean, "mean"},
                                           {"cost", AggFn::StdSample, "std"},
                                           {"", AggFn::Count, "rows"}};
    CHECK(group_aggregate(f, {"diagnosis", "year"}, aggs) ==
          group_aggregate(shuffled, {"diagnosis", "year"}, aggs));

    CHECK(histogram(f.column("cost"), 0, 100000, 50) == histogram(shuffled.column("cost"), 0, 100000, 50));

    auto sf = describe(f.column("cost"));
    auto ss = describe(shuffled.column("cost"));
    CHECK(sf.n == ss.n);
    CHECK(sf.sum == ss.sum);
    CHECK(sf.mean == ss.mean);
    CHECK(sf.std_sample == ss.std_sample);
    CHECK(sf.median == ss.median);

    if (sf.n > 0) {
      CHECK(fraction_below(f.column("cost"), 2500000) == fraction_below(shuffled.column("cost"), 2500000));
      CHECK(percentile(f.column("cost"), 88) == percentile(shuffled.column("cost"), 88));
    }
  }
}

TEST_CASE("partition determinism: split, aggregate, merge is bit-exact") {
  std::mt19937_64 rng(500);
  for (int parts : {1, 2, 3, 7, 16}) {
    auto f = random_frame(rng);
    auto aggs = std::vector<AggregateSpec>{{"cost", AggFn::Sum, "sum"},
                                           {"cost", AggFn::Mean, "mean"},
                                           {"cost", AggFn::StdSample, "std"},
                                           {"cost", AggFn::Count, "n"}};
    auto sequential = group_aggregate(f, {"diagnosis", "year"}, aggs);

    GroupAggregator merged({"diagnosis", "year"}, aggs);
    std::size_t chunk = f.row_count() / parts + 1;
    for (int p = 0; p < parts; ++p) {
      std::vector<std::size_t> idx;
      for (std::size_t r = p * chunk; r < std::min(f.row_count(), (p + 1) * chunk); ++r)
        idx.push_back(r);
      GroupAggregator partial({"diagnosis", "year"}, aggs);
      partial.add(f.take(idx));
      merged.merge(partial);
    }
    CHECK(merged.finish() == sequential);
  }
}

TEST_CASE("conservation: group sums and counts add up to column totals") {
  std::mt19937_64 rng(600);
  for (int iter = 0; iter < 10; ++iter) {
    auto f = random_frame(rng);
    auto grouped = group_aggregate(f, {"county"}, {{"cost", AggFn::Sum, "sum"}, {"cost", AggFn::Count, "n"}});
    int128 total = 0;
    std::int64_t count = 0;
    for (std::size_t r = 0; r < grouped.row_count(); ++r) {
      total += grouped.column("sum").as_int(r);
      count += grouped.column("n").as_int(r);
    }
    auto st = describe(f.column("cost"));
    CHECK(total == st.sum);
    CHECK(count == st.n);
  }
}
