# Platoon friction-uncertainty study
