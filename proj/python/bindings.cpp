#include <pybind11/pybind11.h>
PYBIND11_MODULE(_nucdim, m) { m.doc() = "placeholder"; }
