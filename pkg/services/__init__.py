# <-- THE ADAPTERS: file formats and Graphviz export
