// Regenerates the shipped JSON fixtures from the certified constructors.
#include "fixtures.hpp"

#include <fstream>
#include <iostream>

using namespace hc;

static void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  std::cout << "wrote " << path << "\n";
}

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  write_file(dir + "/q.json", order_to_json_text(rationals()));
  for (long m : {2L, 3L, 5L, 7L, 11L, -1L}) {
    OrderPtr o = quadratic_order(m);
    write_file(dir + "/" + o->name() + ".json", order_to_json_text(o));
  }
  write_file(dir + "/qcbrt2.json", order_to_json_text(cubic_field_2()));
  {
    auto& mq = appendix_field();
    // serialize under the registry name so fixture_order("q8") and the file agree
    std::string text = order_to_json_text(mq.order);
    write_file(dir + "/q8.json", text);
  }
  // extension fixture: Q into Q(sqrt5)
  write_file(dir + "/ext_q_qsqrt5.json",
             "{\n  \"base\": \"q\",\n  \"top\": \"qsqrt5\",\n  \"primitive_image\": [\"0\", \"0\"]\n}\n");
  // the linear-forms system of the worked example
  {
    auto& mq = appendix_field();
    Elem s2 = mq.monomials[1], s3 = mq.monomials[2], s5 = mq.monomials[4];
    Elem a = s2 / s5, b = s3 / s5;
    auto coords = [&](const Elem& e) {
      std::string out = "[";
      for (size_t i = 0; i < e.c.size(); i++)
        out += (i ? ", " : "") + ("\"" + rat_to_string(e.c[i]) + "\"");
      return out + "]";
    };
    std::string zero = "[\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\"]";
    std::string one = coords(Elem::one(mq.order));
    std::string text = "{\n  \"field_ref\": \"q8\",\n  \"n\": 2,\n  \"variant\": \"linear_forms\",\n  \"forms\": [\n";
    text += "    [" + one + ", " + zero + ", " + zero + "],\n";
    text += "    [" + zero + ", " + one + ", " + zero + "],\n";
    text += "    [" + zero + ", " + zero + ", " + one + "],\n";
    text += "    [" + zero + ", " + coords(a) + ", " + coords(b) + "]\n  ]\n}\n";
    write_file(dir + "/appendix_system.json", text);
  }
  return 0;
}
