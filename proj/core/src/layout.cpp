#include "quickpie/layout.hpp"

#include <cctype>

#include "quickpie/errors.hpp"

namespace quickpie {

ItemAction ItemAction::letter(char c) {
  const auto lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower < 'a' || lower > 'z') {
    throw LayoutError(std::string("not a letter: '") + c + "'");
  }
  return {ActionKind::AppendChar, lower};
}

void apply_action(std::string& buffer, const ItemAction& action) {
  switch (action.kind) {
    case ActionKind::AppendChar:
      buffer.push_back(action.ch);
      break;
    case ActionKind::AppendSpace:
      buffer.push_back(' ');
      break;
    case ActionKind::ClearLast:
      if (!buffer.empty()) buffer.pop_back();
      break;
  }
}

std::string to_string(const ItemAction& action) {
  switch (action.kind) {
    case ActionKind::AppendChar:
      return std::string(1, action.ch);
    case ActionKind::AppendSpace:
      return "SPACE";
    case ActionKind::ClearLast:
      return "CLEAR";
  }
  return "?";
}

int Layout::items_in(int slice) const {
  if (slice < 0 || slice >= num_slices()) {
    throw LayoutError("slice index out of range: " + std::to_string(slice));
  }
  return static_cast<int>(slices[static_cast<std::size_t>(slice)].size());
}

const Item& Layout::at(ItemPos pos) const {
  if (pos.item < 0 || pos.item >= items_in(pos.slice)) {
    throw LayoutError("item index out of range: " + std::to_string(pos.item));
  }
  return slices[static_cast<std::size_t>(pos.slice)][static_cast<std::size_t>(pos.item)];
}

namespace {

std::vector<Item> alphabet() {
  std::vector<Item> items;
  items.reserve(kAlphabetSize);
  for (char c = 'a'; c <= 'z'; ++c) {
    items.push_back({std::string(1, static_cast<char>(std::toupper(c))), ItemAction::letter(c), 0});
  }
  items.push_back({"SPACE", ItemAction::space(), 0});
  items.push_back({"CLEAR", ItemAction::clear(), 0});
  return items;
}

std::vector<int> slice_sizes(int n) {
  const int wide = (kAlphabetSize + n - 1) / n;
  const int last = kAlphabetSize - (n - 1) * wide;
  std::vector<int> sizes(static_cast<std::size_t>(n), wide);
  if (last >= 2) {
    sizes.back() = last;
    return sizes;
  }
  const int base = kAlphabetSize / n;
  const int extra = kAlphabetSize % n;
  for (int i = 0; i < n; ++i) sizes[static_cast<std::size_t>(i)] = base + (i < extra ? 1 : 0);
  return sizes;
}

}  // namespace

Layout build_layout(int num_slices) {
  if (num_slices < kMinSlices || num_slices > kMaxSlices) {
    throw LayoutError("slice count must be in [" + std::to_string(kMinSlices) + ", " +
                      std::to_string(kMaxSlices) + "], got " + std::to_string(num_slices));
  }
  const auto items = alphabet();
  Layout layout;
  std::size_t next = 0;
  for (int size : slice_sizes(num_slices)) {
    auto& slice = layout.slices.emplace_back();
    for (int k = 0; k < size; ++k) {
      Item item = items[next++];
      item.shade_rank = k;
      slice.push_back(std::move(item));
    }
  }
  return layout;
}

ItemPos locate(const Layout& layout, const ItemAction& action) {
  for (int s = 0; s < layout.num_slices(); ++s) {
    const auto& slice = layout.slices[static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i < slice.size(); ++i) {
      if (slice[i].action == action) return {s, static_cast<int>(i)};
    }
  }
  throw LayoutError("item not in layout: " + to_string(action));
}

ItemPos locate(const Layout& layout, char c) {
  if (c == ' ') return locate(layout, ItemAction::space());
  return locate(layout, ItemAction::letter(c));
}

std::string check_layout(const Layout& layout) {
  const auto expected = alphabet();
  std::size_t next = 0;
  for (const auto& slice : layout.slices) {
    if (slice.empty()) return "empty slice";
    for (std::size_t i = 0; i < slice.size(); ++i, ++next) {
      if (next >= expected.size()) return "more than 28 items";
      if (slice[i].action != expected[next].action) {
        return "item " + std::to_string(next) + " out of order: " + slice[i].label;
      }
      if (slice[i].shade_rank != static_cast<int>(i)) return "bad shade rank on " + slice[i].label;
    }
  }
  if (next != expected.size()) return "expected 28 items, found " + std::to_string(next);
  return {};
}

}  // namespace quickpie
