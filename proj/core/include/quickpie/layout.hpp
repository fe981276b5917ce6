#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace quickpie {

inline constexpr int kAlphabetSize = 28;  // A-Z, SPACE, CLEAR
inline constexpr int kMinSlices = 2;
inline constexpr int kMaxSlices = 14;

enum class ActionKind { AppendChar, AppendSpace, ClearLast };

/// What committing an item does to the transcript buffer.
struct ItemAction {
  ActionKind kind = ActionKind::AppendChar;
  char ch = 0;  // lowercase letter for AppendChar, 0 otherwise

  static ItemAction letter(char c);
  static ItemAction space() { return {ActionKind::AppendSpace, 0}; }
  static ItemAction clear() { return {ActionKind::ClearLast, 0}; }

  bool types_text() const { return kind != ActionKind::ClearLast; }
  bool operator==(const ItemAction&) const = default;
};

/// Applies an action to a transcript. ClearLast on an empty buffer is a no-op.
void apply_action(std::string& buffer, const ItemAction& action);

std::string to_string(const ItemAction& action);

struct Item {
  std::string label;
  ItemAction action;
  int shade_rank = 0;  // clockwise position within the slice; darker as it grows

  bool operator==(const Item&) const = default;
};

struct ItemPos {
  int slice = 0;
  int item = 0;

  bool operator==(const ItemPos&) const = default;
};

/// Character-to-slice assignment. Slices are listed clockwise from slice 0.
struct Layout {
  std::vector<std::vector<Item>> slices;

  int num_slices() const { return static_cast<int>(slices.size()); }
  int items_in(int slice) const;
  const Item& at(ItemPos pos) const;
};

/// Distributes A..Z, SPACE, CLEAR contiguously over `num_slices` slices.
///
/// Every slice but the last gets ceil(28 / n) items and the last slice takes
/// the remainder, which for six slices gives [ABCDE][FGHIJ][KLMNO][PQRST]
/// [UVWXY][Z SPACE CLEAR]. When that would leave the last slice with fewer
/// than two items (n = 8..13, except where it divides evenly) the split falls
/// back to balanced sizes, larger slices first.
///
/// Throws LayoutError unless kMinSlices <= num_slices <= kMaxSlices.
Layout build_layout(int num_slices);

/// Position of the item carrying `action`. Throws LayoutError if absent.
ItemPos locate(const Layout& layout, const ItemAction& action);

/// Position of a typed character: letters (either case) or ' '.
/// Throws LayoutError for anything else.
ItemPos locate(const Layout& layout, char c);

/// Structural checks: 28 items, alphabetical order, one SPACE, one CLEAR.
/// Returns an empty string when the layout is well formed, else the first
/// violation found.
std::string check_layout(const Layout& layout);

}  // namespace quickpie
