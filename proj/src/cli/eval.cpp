#include "corec/cli/eval.hpp"

#include <limits>
#include <memory>

#include "corec/classical.hpp"
#include "corec/cli/functions.hpp"
#include "corec/corec_schemes.hpp"
#include "corec/errors.hpp"

namespace corec::cli {
namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

Value nat_value(Nat n) {
  if (n.value() > static_cast<Nat::rep>(std::numeric_limits<std::int64_t>::max())) {
    throw RangeError("natural number does not fit an integer");
  }
  return Value::integer(static_cast<std::int64_t>(n.value()));
}

Value literal(const Arg& a) { return a.kind == Arg::Kind::boolean ? Value::boolean(a.boolean) : Value::integer(a.integer); }

std::size_t natural(const Arg& a) { return static_cast<std::size_t>(a.integer); }

Stream<Value> as_infinite(const AnyStream& s) { return std::get<Stream<Value>>(s); }

std::string render(const HeadOutcome<Value>& h) { return h.is_value() ? h.value().to_string() : "_"; }

Stream<Value> cycle(std::vector<Value> items) {
  auto shared = std::make_shared<const std::vector<Value>>(std::move(items));
  return coiter([shared](std::size_t i) { return (*shared)[i]; }, [shared](std::size_t i) { return (i + 1) % shared->size(); },
                std::size_t{0});
}

AnyStream generator(const Call& g, const Options& o) {
  const auto& a = g.args;
  if (g.name == "always") return always(literal(a[0]));
  if (g.name == "repeat") return repeat(fn1(a[0].name), literal(a[1]));
  if (g.name == "count-up") return maps(nat_value, count_up(Nat{natural(a[0])}));
  if (g.name == "count-down") return maps(nat_value, count_down(Nat{natural(a[0])}));
  if (g.name == "scons") return scons(literal(a[0]), as_infinite(build_stream(*a[1].stream, o)));
  if (g.name == "cycle") return cycle(a[0].list);
  if (g.name == "stream-list") return stream_list(a[0].list);
  if (g.name == "single") return single(literal(a[0]));
  if (g.name == "empty") return empty<Value>();
  if (g.name == "always-skips") return always_skips<Value>();
  if (g.name == "append") {
    auto suffix = build_stream(*a[1].stream, o);
    const auto& prefix = a[0].list;
    return std::visit(
        overloaded{[&](const Stream<Value>& s) -> AnyStream { return append_list(prefix, s); },
                   [&](const auto& s) -> AnyStream {
                     if (prefix.empty()) return s;
                     return append_ending(stream_list(prefix), s);
                   }},
        suffix);
  }
  throw std::logic_error("unhandled generator '" + g.name + "'");
}

template <class Handle>
Handle drop_never_ending(Handle s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) s = s.tail();
  return s;
}

GeneralStream<Value> drop_general(GeneralStream<Value> s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    auto t = s.tail();
    if (t.is_ended()) return empty<Value>();
    s = t.next();
  }
  return s;
}

AnyStream stage(const Call& c, AnyStream in, const Options& o) {
  const auto& a = c.args;
  if (c.name == "map") {
    auto f = fn1(a[0].name);
    return std::visit([&](const auto& s) -> AnyStream { return maps(f, s); }, in);
  }
  if (c.name == "filter") {
    auto p = predicate(a[0].name);
    return std::visit([&](const auto& s) -> AnyStream { return filters(s, p); }, in);
  }
  if (c.name == "drop") {
    std::size_t n = natural(a[0]);
    return std::visit(overloaded{[&](const Stream<Value>& s) -> AnyStream { return drops(s, n); },
                                 [&](const SkippingStream<Value>& s) -> AnyStream { return drop_never_ending(s, n); },
                                 [&](const EndingStream<Value>& s) -> AnyStream {
                                   auto rest = drops_ending(s, n);
                                   if (rest.is_ended()) return empty<Value>();
                                   return to_general(rest.next());
                                 },
                                 [&](const GeneralStream<Value>& s) -> AnyStream { return drop_general(s, n); }},
                      in);
  }
  if (c.name == "fast-forward") {
    std::size_t fuel = a.empty() ? o.fuel : natural(a[0]);
    return std::visit(overloaded{[&](const Stream<Value>& s) -> AnyStream { return fast_forward(s, fuel); },
                                 [&](const SkippingStream<Value>& s) -> AnyStream { return fast_forward(s, fuel); },
                                 [&](const auto&) -> AnyStream { throw std::logic_error("fast-forward on an ending kind"); }},
                      in);
  }

  Stream<Value> s = as_infinite(in);
  if (c.name == "zips-with") return zips_with(fn2(a[0].name), s, as_infinite(build_stream(*a[1].stream, o)));
  if (c.name == "zip") return zips_with(fn2("pair"), s, as_infinite(build_stream(*a[0].stream, o)));
  if (c.name == "by-twos") return by_twos(s, a.empty() ? fn2("pair") : fn2(a[0].name));
  if (c.name == "infinite-bits") return maps(nat_value, Stream<Nat>(infinite_bits(s, o.fuel)));
  if (c.name == "infinite-bits*") return maps(nat_value, Stream<Nat>(infinite_bits_star(s, o.fuel)));
  if (c.name == "infinite-repetitions") {
    std::size_t fuel = a.empty() ? o.fuel : natural(a[0]);
    return maps(nat_value, Stream<Nat>(infinite_repetitions(s, fuel)));
  }
  throw std::logic_error("unhandled stage '" + c.name + "'");
}

void check_depth(std::uint64_t depth, const Options& o) {
  if (depth > o.depth_limit) {
    throw LimitError("observation depth " + std::to_string(depth) + " exceeds the depth limit " +
                     std::to_string(o.depth_limit));
  }
}

std::vector<std::string> take(const AnyStream& in, std::size_t n) {
  std::vector<std::string> out;
  std::visit(overloaded{[&](const Stream<Value>& s) {
                          for (const auto& v : takes(s, n)) out.push_back(v.to_string());
                        },
                        [&](const EndingStream<Value>& s) {
                          for (const auto& v : takes_ending(s, n)) out.push_back(v.to_string());
                        },
                        [&](const auto& s) {
                          for (const auto& h : positions(s, n)) out.push_back(render(h));
                        }},
             in);
  return out;
}

std::string index_of(const AnyStream& in, std::size_t n) {
  auto past_end = [n] { return LimitError("index " + std::to_string(n) + " is past the end of the stream"); };
  return std::visit(overloaded{[&](const Stream<Value>& s) { return index(s, n).to_string(); },
                               [&](const EndingStream<Value>& s) {
                                 auto rest = drops_ending(s, n);
                                 if (rest.is_ended()) throw past_end();
                                 return rest.next().head().to_string();
                               },
                               [&](const SkippingStream<Value>& s) { return render(drop_never_ending(s, n).head()); },
                               [&](const GeneralStream<Value>& s) {
                                 auto p = positions(s, n + 1);
                                 if (p.size() <= n) throw past_end();
                                 return render(p[n]);
                               }},
                    in);
}

std::vector<std::string> collect(const EndingStream<Value>& s, const Options& o) {
  std::vector<std::string> out;
  EndingStream<Value> cur = s;
  while (true) {
    check_depth(out.size() + 1, o);
    out.push_back(cur.head().to_string());
    auto t = cur.tail();
    if (t.is_ended()) return out;
    cur = t.next();
  }
}

}  // namespace

StreamKind kind_of(const AnyStream& s) {
  switch (s.index()) {
    case 0:
      return StreamKind::infinite;
    case 1:
      return StreamKind::ending;
    case 2:
      return StreamKind::skipping;
    default:
      return StreamKind::general;
  }
}

AnyStream build_stream(const StreamExpr& e, const Options& options) {
  AnyStream s = generator(e.generator, options);
  for (const Call& c : e.stages) s = stage(c, std::move(s), options);
  return s;
}

std::vector<std::string> observe(const PipelineExpr& e, const Options& options) {
  check_pipeline(e);
  AnyStream s = build_stream(e.source, options);
  switch (e.observer.kind) {
    case Observer::Kind::take:
      check_depth(e.observer.count, options);
      return take(s, static_cast<std::size_t>(e.observer.count));
    case Observer::Kind::index:
      check_depth(e.observer.count + 1, options);
      return {index_of(s, static_cast<std::size_t>(e.observer.count))};
    case Observer::Kind::collect:
      return collect(std::get<EndingStream<Value>>(s), options);
  }
  return {};
}

void run_pipeline(const PipelineExpr& e, const Options& options, std::ostream& out) {
  auto items = observe(e, options);
  if (options.format == Format::list && e.observer.kind != Observer::Kind::index) {
    out << '[';
    for (std::size_t i = 0; i < items.size(); ++i) out << (i ? ", " : "") << items[i];
    out << "]\n";
  } else {
    for (const auto& item : items) out << item << '\n';
  }
}

}  // namespace corec::cli
