# Package formation_lab - Colorations d'arêtes des graphes cubiques par formations
