#ifndef MGN_GROUP_HPP
#define MGN_GROUP_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mgn {

// Finite group by multiplication table. Element 0 is the identity.
class Group {
public:
    Group() : mul_{{0}}, inv_{0}, names_{"0"}, cyclic_m_(1) {}

    static Group cyclic(int m);
    static Group symmetric(int n);
    // validates the table; the identity is moved to index 0
    static Group from_table(std::vector<std::string> names, const std::vector<std::vector<int>>& table);
    static Group from_json_file(const std::string& path);

    int order() const { return static_cast<int>(mul_.size()); }
    int mul(int a, int b) const { return mul_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int a, int h) const { return mul(mul(a, h), inv(a)); }
    int element_order(int a) const;
    int power(int a, int k) const;
    int centralizer_order(int h) const;
    int center_order() const;
    std::vector<int> conjugacy_class(int h) const;
    bool is_cyclic_kind() const { return cyclic_m_ > 0; }
    int cyclic_order() const { return cyclic_m_; }

    const std::string& name(int a) const { return names_[a]; }
    int parse_element(const std::string& s) const;
    std::string token() const;

    // subgroups as sorted element lists, ordered by size then lexicographically
    const std::vector<std::vector<int>>& subgroups() const;
    std::vector<int> generated(const std::vector<int>& gens) const;
    bool contains(const std::vector<int>& sub, int a) const;
    // subgroup as a group; elems[i] is the element of this group for index i
    Group induced(const std::vector<int>& sub, std::vector<int>* elems = nullptr) const;

    const std::vector<std::vector<int>>& table() const { return mul_; }
    const std::vector<std::string>& names() const { return names_; }
    std::string table_file;  // set when loaded from a file

private:
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    std::vector<std::string> names_;
    int cyclic_m_ = 0;
    mutable std::vector<std::vector<int>> subgroups_;
    void finish();
};

}  // namespace mgn

#endif
