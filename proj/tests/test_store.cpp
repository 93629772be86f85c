#include <stdexcept>

#include "doctest.h"

#include "bullyguard/session_store.hpp"

#include "helpers.hpp"

using namespace bullyguard;
using testutil::add_comments;
using testutil::profile;
using testutil::session;

TEST_CASE("insert and get round-trip, ids keep insertion order") {
  SessionStore store;
  MediaSession a = session("a", profile(10, 5, 3), "hello", 100);
  add_comments(a, {"one", "two"});
  store.insert(a);
  store.insert(session("b", profile(1, 2, 3), "", 100));

  CHECK(store.size() == 2);
  CHECK(store.contains("a"));
  CHECK(!store.contains("zz"));
  CHECK(store.ids() == std::vector<std::string>{"a", "b"});

  const MediaSession& got = std::as_const(store).get("a");
  CHECK(got.session_id == "a");
  CHECK(got.poster.follower_count == 10);
  CHECK(got.caption == "hello");
  CHECK(got.created_at == 100);
  CHECK(got.comments.size() == 2);
  CHECK(got.comments[1].text == "two");
}

TEST_CASE("insert resets processing state") {
  SessionStore store;
  MediaSession dirty = session("a", profile(1, 1, 1), "", 0);
  add_comments(dirty, {"x", "y"});
  dirty.processed_count = 2;
  dirty.confidence_history.append(0.5);
  dirty.decision_history.push_back(DecisionRecord{1, true, 0.5});
  dirty.last_alert_index = 0;
  store.insert(dirty);

  const MediaSession& stored = store.get("a");
  CHECK(stored.processed_count == 0);
  CHECK(!stored.cached_features.has_value());
  CHECK(!stored.score_cache.ready);
  CHECK(stored.confidence_history.empty());
  CHECK(stored.decision_history.empty());
  CHECK(!stored.last_alert_index.has_value());
  CHECK(stored.unprocessed_count() == 2);
}

TEST_CASE("insert validation") {
  SessionStore store;
  store.insert(session("a", profile(1, 1, 1), "", 0));
  CHECK_THROWS_AS(store.insert(session("a", profile(1, 1, 1), "", 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(store.insert(session("", profile(1, 1, 1), "", 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(store.insert(session("neg", profile(-1, 1, 1), "", 0)),
                  std::invalid_argument);

  MediaSession unsorted = session("u", profile(1, 1, 1), "", 10);
  unsorted.comments.push_back(Comment{12, "later"});
  unsorted.comments.push_back(Comment{11, "earlier"});
  CHECK_THROWS_AS(store.insert(unsorted), std::invalid_argument);

  MediaSession early = session("e", profile(1, 1, 1), "", 10);
  early.comments.push_back(Comment{9, "before creation"});
  CHECK_THROWS_AS(store.insert(early), std::invalid_argument);
}

TEST_CASE("append_comments extends the stream in order") {
  SessionStore store;
  store.insert(session("a", profile(1, 1, 1), "", 10));
  store.append_comments("a", {Comment{10, "first"}, Comment{12, "second"}});
  store.append_comments("a", {Comment{12, "third"}});
  CHECK(store.get("a").comments.size() == 3);
  CHECK(store.get("a").comments[2].text == "third");

  CHECK_THROWS_AS(store.append_comments("a", {Comment{11, "out of order"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(store.append_comments("missing", {Comment{20, "x"}}),
                  std::out_of_range);

  store.insert(session("b", profile(1, 1, 1), "", 10));
  CHECK_THROWS_AS(store.append_comments("b", {Comment{9, "before creation"}}),
                  std::invalid_argument);
}

TEST_CASE("get on a missing id throws") {
  SessionStore store;
  CHECK_THROWS_AS(store.get("nope"), std::out_of_range);
  CHECK_THROWS_AS(std::as_const(store).get("nope"), std::out_of_range);
}
