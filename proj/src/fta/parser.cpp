#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "uavrel/error.hpp"
#include "uavrel/fta/fault_tree.hpp"

namespace uavrel::fta {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Position {
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void fail(ErrorCode code, Position at, const std::string& message) {
  throw Error(code, "line " + std::to_string(at.line) + ":" + std::to_string(at.column) + ": " +
                        message);
}

// Splits on whitespace; a double-quoted run (which may follow `key=`) stays in
// one token with the quotes removed. `#` outside quotes ends the line.
std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    Token tok{{}, i + 1};
    bool quoted = false;
    while (i < line.size()) {
      const char c = line[i];
      if (c == '"') {
        quoted = !quoted;
        ++i;
        continue;
      }
      if (!quoted && (c == ' ' || c == '\t' || c == '\r' || c == '#')) break;
      tok.text.push_back(c);
      ++i;
    }
    if (quoted) fail(ErrorCode::kParseError, {line_no, tok.column}, "unterminated quote");
    out.push_back(std::move(tok));
  }
  return out;
}

bool valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  auto head = static_cast<unsigned char>(id.front());
  if (!(std::isalpha(head) || id.front() == '_')) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-' || c == '.';
  });
}

double parse_number(const Token& tok, std::string_view text, std::size_t line_no) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    fail(ErrorCode::kParseError, {line_no, tok.column},
         "expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    out.emplace_back(text.substr(start, end - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Attributes {
  std::unordered_map<std::string, std::pair<std::string, std::size_t>> values;

  std::optional<std::pair<std::string, std::size_t>> take(const std::string& key) {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    auto v = it->second;
    values.erase(it);
    return v;
  }
};

Attributes read_attributes(const std::vector<Token>& tokens, std::size_t from, std::size_t line_no) {
  Attributes attrs;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    const auto eq = tok.text.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail(ErrorCode::kParseError, {line_no, tok.column},
           "expected key=value, got '" + tok.text + "'");
    }
    const std::string key = tok.text.substr(0, eq);
    if (!attrs.values.emplace(key, std::make_pair(tok.text.substr(eq + 1), tok.column)).second) {
      fail(ErrorCode::kParseError, {line_no, tok.column}, "attribute '" + key + "' repeated");
    }
  }
  return attrs;
}

void reject_leftovers(const Attributes& attrs, std::size_t line_no) {
  if (attrs.values.empty()) return;
  const auto& [key, value] = *attrs.values.begin();
  fail(ErrorCode::kParseError, {line_no, value.second}, "unknown attribute '" + key + "'");
}

struct PendingNode {
  Node node;
  Position at;
  std::vector<std::pair<std::string, Position>> children;  // gates only
};

struct PendingMarkov {
  Position at;
  std::vector<std::string> states;
  std::vector<std::string> absorbing;
  std::vector<markov::RateTransition> transitions;
};

std::optional<CbeModel> cbe_model_from(std::string_view text) {
  if (text == "propulsion") return CbeModel::kPropulsion;
  if (text == "battery") return CbeModel::kBattery;
  if (text == "processor") return CbeModel::kProcessor;
  if (text == "markov") return CbeModel::kMarkov;
  return std::nullopt;
}

std::vector<std::string> default_symptoms(CbeModel model) {
  switch (model) {
    case CbeModel::kPropulsion: return {"motor_status", "config"};
    case CbeModel::kBattery: return {"battery_pct", "activity"};
    case CbeModel::kProcessor: return {"temp_c"};
    case CbeModel::kMarkov: return {};
  }
  return {};
}

}  // namespace

std::string_view to_string(CbeModel model) noexcept {
  switch (model) {
    case CbeModel::kPropulsion: return "propulsion";
    case CbeModel::kBattery: return "battery";
    case CbeModel::kProcessor: return "processor";
    case CbeModel::kMarkov: return "markov";
  }
  return "?";
}

std::vector<std::size_t> FaultTree::gates() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_gate()) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> FaultTree::find(std::string_view id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id == id) return i;
  }
  return std::nullopt;
}

FaultTree parse_fault_tree(std::string_view text) {
  std::vector<PendingNode> pending;
  std::unordered_map<std::string, std::size_t> index;
  std::map<std::string, PendingMarkov, std::less<>> pending_markov;
  std::optional<std::pair<std::string, Position>> top;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::string_view line =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens[0].text;
    auto need = [&](std::size_t count, const char* shape) {
      if (tokens.size() < count) {
        fail(ErrorCode::kParseError, {line_no, tokens.back().column + tokens.back().text.size()},
             std::string("expected ") + shape);
      }
    };
    auto declare_node = [&](const Token& id_tok) -> PendingNode& {
      if (!valid_identifier(id_tok.text)) {
        fail(ErrorCode::kParseError, {line_no, id_tok.column},
             "invalid identifier '" + id_tok.text + "'");
      }
      if (index.count(id_tok.text)) {
        fail(ErrorCode::kDuplicateId, {line_no, id_tok.column},
             "id '" + id_tok.text + "' already declared");
      }
      index.emplace(id_tok.text, pending.size());
      pending.push_back(PendingNode{Node{id_tok.text, {}, BasicEvent{}}, {line_no, id_tok.column}, {}});
      return pending.back();
    };

    if (keyword == "event") {
      need(3, "event <id> rate=<1/h>");
      auto attrs = read_attributes(tokens, 2, line_no);
      auto rate = attrs.take("rate");
      if (!rate) fail(ErrorCode::kParseError, {line_no, tokens[1].column}, "event needs rate=");
      const double value = parse_number(tokens[2], rate->first, line_no);
      if (value < 0.0) fail(ErrorCode::kParseError, {line_no, rate->second}, "rate must be >= 0");
      auto label = attrs.take("label");
      reject_leftovers(attrs, line_no);
      auto& p = declare_node(tokens[1]);
      p.node.body = BasicEvent{value};
      if (label) p.node.label = label->first;
    } else if (keyword == "cbe") {
      need(3, "cbe <id> model=<kind>");
      auto attrs = read_attributes(tokens, 2, line_no);
      auto model = attrs.take("model");
      if (!model) fail(ErrorCode::kParseError, {line_no, tokens[1].column}, "cbe needs model=");
      const auto kind = cbe_model_from(model->first);
      if (!kind) {
        fail(ErrorCode::kUnresolvedBinding, {line_no, model->second},
             "unknown model binding '" + model->first + "'");
      }
      ComplexBasicEvent cbe{*kind, {}, default_symptoms(*kind)};
      if (auto ref = attrs.take("ref")) cbe.ref = ref->first;
      if (*kind == CbeModel::kMarkov && cbe.ref.empty()) {
        fail(ErrorCode::kUnresolvedBinding, {line_no, model->second}, "model=markov needs ref=");
      }
      if (auto symptoms = attrs.take("symptoms")) {
        cbe.symptoms = split_list(symptoms->first);
        for (const auto& s : cbe.symptoms) {
          if (std::find(std::begin(kSymptomNames), std::end(kSymptomNames), s) ==
              std::end(kSymptomNames)) {
            fail(ErrorCode::kUnresolvedBinding, {line_no, symptoms->second},
                 "unknown symptom '" + s + "'");
          }
        }
      }
      if (auto link = attrs.take("link")) {
        if (link->first == "probabilistic") {
          fail(ErrorCode::kUnsupportedFeature, {line_no, link->second},
               "probabilistic symptom links are not implemented");
        }
        if (link->first != "deterministic") {
          fail(ErrorCode::kParseError, {line_no, link->second}, "link must be deterministic");
        }
      }
      auto label = attrs.take("label");
      reject_leftovers(attrs, line_no);
      auto& p = declare_node(tokens[1]);
      p.node.body = std::move(cbe);
      if (label) p.node.label = label->first;
    } else if (keyword == "gate") {
      need(4, "gate <id> <AND|OR> children=<id,...>");
      const auto& type_tok = tokens[2];
      GateType type;
      if (type_tok.text == "AND" || type_tok.text == "and") {
        type = GateType::kAnd;
      } else if (type_tok.text == "OR" || type_tok.text == "or") {
        type = GateType::kOr;
      } else {
        fail(ErrorCode::kParseError, {line_no, type_tok.column},
             "gate type must be AND or OR, got '" + type_tok.text + "'");
      }
      auto attrs = read_attributes(tokens, 3, line_no);
      auto children = attrs.take("children");
      if (!children || children->first.empty()) {
        fail(ErrorCode::kParseError, {line_no, tokens[1].column}, "gate needs children=");
      }
      auto label = attrs.take("label");
      reject_leftovers(attrs, line_no);
      auto& p = declare_node(tokens[1]);
      p.node.body = Gate{type, {}};
      if (label) p.node.label = label->first;
      std::size_t column = children->second + std::string("children=").size();
      for (const auto& child : split_list(children->first)) {
        p.children.emplace_back(child, Position{line_no, column});
        column += child.size() + 1;
      }
    } else if (keyword == "markov") {
      need(4, "markov <name> states=<s,...> absorbing=<s,...>");
      const auto& name = tokens[1];
      if (!valid_identifier(name.text)) {
        fail(ErrorCode::kParseError, {line_no, name.column}, "invalid model name '" + name.text + "'");
      }
      if (pending_markov.count(name.text)) {
        fail(ErrorCode::kDuplicateId, {line_no, name.column},
             "markov model '" + name.text + "' already declared");
      }
      auto attrs = read_attributes(tokens, 2, line_no);
      auto states = attrs.take("states");
      auto absorbing = attrs.take("absorbing");
      if (!states || !absorbing) {
        fail(ErrorCode::kParseError, {line_no, name.column}, "markov needs states= and absorbing=");
      }
      reject_leftovers(attrs, line_no);
      pending_markov.emplace(name.text, PendingMarkov{{line_no, name.column},
                                                      split_list(states->first),
                                                      split_list(absorbing->first),
                                                      {}});
    } else if (keyword == "rate") {
      need(5, "rate <model> <from> <to> <1/h>");
      if (tokens.size() > 5) {
        fail(ErrorCode::kParseError, {line_no, tokens[5].column}, "unexpected token");
      }
      auto it = pending_markov.find(tokens[1].text);
      if (it == pending_markov.end()) {
        fail(ErrorCode::kUnresolvedBinding, {line_no, tokens[1].column},
             "rate refers to undeclared markov model '" + tokens[1].text + "'");
      }
      it->second.transitions.push_back(
          {tokens[2].text, tokens[3].text, parse_number(tokens[4], tokens[4].text, line_no)});
    } else if (keyword == "top") {
      need(2, "top <id>");
      if (tokens.size() > 2) {
        fail(ErrorCode::kParseError, {line_no, tokens[2].column}, "unexpected token");
      }
      if (top) fail(ErrorCode::kParseError, {line_no, tokens[0].column}, "top declared twice");
      top = std::make_pair(tokens[1].text, Position{line_no, tokens[1].column});
    } else {
      fail(ErrorCode::kParseError, {line_no, tokens[0].column},
           "unknown declaration '" + keyword + "'");
    }
  }

  FaultTree tree;

  for (auto& [name, decl] : pending_markov) {
    try {
      tree.markov_.emplace(name, markov::build_markov_model(decl.states, decl.transitions,
                                                            decl.absorbing));
    } catch (const Error& e) {
      fail(e.code(), decl.at, "markov model '" + name + "': " + e.what());
    }
  }

  // resolve children, one parent per node
  std::vector<std::optional<std::size_t>> parent(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    auto& p = pending[i];
    if (!p.node.is_gate()) continue;
    auto& gate = std::get<Gate>(p.node.body);
    for (const auto& [child, at] : p.children) {
      auto it = index.find(child);
      if (it == index.end()) {
        fail(ErrorCode::kUndefinedNode, at, "child '" + child + "' is not declared");
      }
      const std::size_t c = it->second;
      if (parent[c]) {
        fail(c == i ? ErrorCode::kCycleDetected : ErrorCode::kSharedNode, at,
             "node '" + child + "' already has parent '" + pending[*parent[c]].node.id + "'");
      }
      parent[c] = i;
      gate.children.push_back(c);
    }
  }

  // cycles: with single parents, a cycle is a parent chain returning to itself
  for (std::size_t i = 0; i < pending.size(); ++i) {
    std::size_t steps = 0;
    for (auto p = parent[i]; p; p = parent[*p]) {
      if (*p == i || ++steps > pending.size()) {
        fail(ErrorCode::kCycleDetected, pending[i].at,
             "node '" + pending[i].node.id + "' is its own ancestor");
      }
    }
  }

  if (!top) fail(ErrorCode::kParseError, {line_no, 1}, "document has no top declaration");
  auto root_it = index.find(top->first);
  if (root_it == index.end()) {
    fail(ErrorCode::kUndefinedNode, top->second, "top '" + top->first + "' is not declared");
  }
  if (parent[root_it->second]) {
    fail(ErrorCode::kParseError, top->second, "top '" + top->first + "' has a parent gate");
  }
  for (std::size_t i = 0; i < pending.size(); ++i) {
    std::size_t r = i;
    while (parent[r]) r = *parent[r];
    if (r != root_it->second) {
      fail(ErrorCode::kUnreachableNode, pending[i].at,
           "node '" + pending[i].node.id + "' is not reachable from top '" + top->first + "'");
    }
  }

  for (auto& p : pending) {
    if (auto* cbe = std::get_if<ComplexBasicEvent>(&p.node.body)) {
      if (cbe->model == CbeModel::kMarkov && !tree.markov_.count(cbe->ref)) {
        fail(ErrorCode::kUnresolvedBinding, p.at,
             "cbe '" + p.node.id + "' refers to undeclared markov model '" + cbe->ref + "'");
      }
    }
    tree.nodes_.push_back(std::move(p.node));
  }
  tree.root_ = root_it->second;
  for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
    if (tree.nodes_[i].is_leaf()) tree.leaves_.push_back(i);
  }

  // post-order from the root
  std::vector<std::pair<std::size_t, std::size_t>> stack = {{tree.root_, 0}};
  while (!stack.empty()) {
    auto& [n, next] = stack.back();
    const auto* gate = std::get_if<Gate>(&tree.nodes_[n].body);
    if (gate && next < gate->children.size()) {
      const std::size_t child = gate->children[next++];
      stack.emplace_back(child, 0);
    } else {
      tree.order_.push_back(n);
      stack.pop_back();
    }
  }
  return tree;
}

FaultTree load_fault_tree(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read tree document " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_fault_tree(buffer.str());
}

}  // namespace uavrel::fta
